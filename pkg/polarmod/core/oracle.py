"""
Truth-table oracle for classical provability modulo a rewrite system
"""
import logging

from .formula import FALSUM
from .rewrite_system import rules_to_axioms
from .semantics import check_atom_limit, evaluate, satisfies, valuations
from .sequent_prover import Sequent
from ..utils.log_helpers import log_message


def countermodel(sequent, system, atom_limit=None):
    """First valuation satisfying the rule axioms and the left side while
    falsifying every formula on the right

    Args:
        sequent (Sequent): Sequent to refute
        system (PolarizedRewriteSystem): Rules read as axioms
        atom_limit (int): Exhaustive bound

    Returns:
        dict or None: The valuation, None when the sequent is classically valid

    Raises:
        TooManyAtoms: Above the exhaustive bound
    """
    axioms = rules_to_axioms(system).axioms
    atom_names = system.atoms() | sequent.atoms()
    limit = check_atom_limit(atom_names, atom_limit)
    right = sequent.right or (FALSUM,)
    for row in valuations(atom_names, limit):
        if satisfies(row, axioms) and satisfies(row, sequent.left) and \
                not any(evaluate(formula, row) for formula in right):
            return row
    return None


def oracle_provable(sequent, system, atom_limit=None):
    """Classical provability of a sequent from the axioms of a rewrite system"""
    row = countermodel(sequent, system, atom_limit)
    if row is not None:
        log_message(f'Countermodel for {sequent}: {row}', logging.DEBUG)
    return row is None


def consistency_check(system, atom_limit=None):
    """True when false is not provable from the rule axioms"""
    return not oracle_provable(Sequent((), (FALSUM,)), system, atom_limit)
