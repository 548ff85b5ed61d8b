"""
Compilation of consistent propositional theories into polarized rewrite systems
"""
import json
import logging
from dataclasses import dataclass, field

from .clausal import Literal, clause_to_formula, to_clausal
from .errors import InconsistentTheory
from .formula import Theory, conjoin, disjoin
from .rewrite_system import (NEGATIVE, POSITIVE, PolarizedRewriteSystem, RewriteRule,
                             rules_to_axioms, unpolarized_axioms)
from .settings import DEFAULT_SETTINGS
from .semantics import Valuation, check_atom_limit, satisfies, valuations
from ..utils.log_helpers import log_message


# -- model finding ----------------------------------------------------------

def _propagate(clauses, assignment):
    """Simplify under the assignment, extending it with unit literals

    Returns:
        list or None: Remaining clauses as literal sets, None on a conflict
    """
    while True:
        remaining = []
        unit = None
        for clause in clauses:
            literals = set()
            satisfied = False
            for literal in clause:
                if literal.atom in assignment:
                    if bool(assignment[literal.atom]) == literal.positive:
                        satisfied = True
                        break
                else:
                    literals.add(literal)
            if satisfied:
                continue
            if not literals:
                return None
            if len(literals) == 1 and unit is None:
                unit = next(iter(literals))
            remaining.append(frozenset(literals))
        if unit is None:
            return remaining
        assignment[unit.atom] = 1 if unit.positive else 0
        clauses = remaining


def _dpll(clauses, assignment, seed):
    remaining = _propagate(clauses, assignment)
    if remaining is None:
        return None
    if not remaining:
        return assignment
    atom = min(literal.atom for clause in remaining for literal in clause)
    preferred = 1 if seed.get(atom) else 0
    for value in (preferred, 1 - preferred):
        trial = dict(assignment)
        trial[atom] = value
        found = _dpll(remaining, trial, seed)
        if found is not None:
            return found
    return None


def find_model(clause_set, seed=None):
    """Deterministic DPLL model search

    Unit propagation first, then branching on the first unassigned atom in
    name order, trying 0 before 1. A seed valuation flips the preferred
    value of its atoms and fills atoms left unconstrained.

    Args:
        clause_set (ClauseSet): Clauses to satisfy
        seed (dict or Valuation): Preferred atom values

    Returns:
        Valuation or None: A total model over the clause atoms, None if unsatisfiable
    """
    if isinstance(seed, Valuation):
        seed = seed.as_dict()
    seed = dict(seed or {})
    clauses = [frozenset(clause.literals) for clause in clause_set]
    assignment = _dpll(clauses, {}, seed)
    if assignment is None:
        return None
    for atom in clause_set.atoms:
        assignment.setdefault(atom, 1 if seed.get(atom) else 0)
    return Valuation(assignment)


# -- rule extraction --------------------------------------------------------

@dataclass(frozen=True)
class TraceEntry:
    """One extraction step: chosen clause and literal, consumed clauses, emitted rule"""
    clause: object
    literal: Literal
    consumed: tuple
    rule: RewriteRule
    polarity: object

    def to_dict(self):
        return {
            'clause': str(self.clause),
            'literal': str(self.literal),
            'consumed': [str(clause) for clause in self.consumed],
            'rule': self.rule.format(self.polarity),
        }


@dataclass(frozen=True)
class CompileReport:
    """Result of compiling a theory

    Attributes:
        model (Valuation): Model driving the rule signs
        clausal (ClauseSet): Pruned clausal form of the theory
        system (PolarizedRewriteSystem): Extracted rules, disjoint by construction
        trace (tuple): TraceEntry per emitted rule
        unpolarized (bool or None): Whether reading the rules without polarity
            still presents the theory, None when not checked
    """
    model: Valuation
    clausal: object
    system: PolarizedRewriteSystem
    trace: tuple = field(default=())
    unpolarized: object = None

    def to_dict(self):
        return {
            'model': self.model.as_dict(),
            'clauses': [str(clause) for clause in self.clausal],
            'rules': [rule.format(NEGATIVE) for rule in self.system.negative]
                     + [rule.format(POSITIVE) for rule in self.system.positive],
            'trace': [entry.to_dict() for entry in self.trace],
            'unpolarized_presentation': self.unpolarized,
        }

    def format_text(self):
        lines = [f'model: {self.model}', 'clauses:']
        lines.extend(f'  {clause}' for clause in self.clausal)
        lines.append('trace:')
        for entry in self.trace:
            lines.append(f'  {entry.clause}  [{entry.literal}]  =>  '
                         f'{entry.rule.format(entry.polarity)}'
                         f'  ({len(entry.consumed)} consumed)')
        if self.unpolarized is not None:
            verdict = 'yes' if self.unpolarized else 'no'
            lines.append(f'unpolarized presentation: {verdict}')
        return '\n'.join(lines) + '\n'


def _negative_rule(atom, clauses, literal):
    remainders = [clause_to_formula(clause.without(literal)) for clause in clauses]
    return RewriteRule(atom, conjoin(remainders))


def _positive_rule(atom, clauses, literal):
    disjuncts = [conjoin([item.complement().to_formula()
                          for item in clause.without(literal).literals])
                 for clause in clauses]
    return RewriteRule(atom, disjoin(disjuncts))


def extract_rules(clause_set, model):
    """Turn clauses into rules guided by a model

    Repeatedly take the first remaining clause and its first literal true in
    the model. For a literal ~P every remaining clause containing ~P becomes
    part of the negative rule P --> A1 /\\ ... /\\ An; for a literal P every
    remaining clause containing P becomes part of the positive rule
    P --> D1 \\/ ... \\/ Dn with Dj the complemented remainder.

    Args:
        clause_set (ClauseSet): Clauses in canonical order
        model (Valuation): A model of the clauses

    Returns:
        tuple: (PolarizedRewriteSystem, tuple of TraceEntry)
    """
    remaining = list(clause_set)
    negative, positive, trace = [], [], []
    while remaining:
        chosen = remaining[0]
        literal = next(item for item in chosen.literals if item.satisfied_by(model))
        consumed = [clause for clause in remaining if literal in clause]
        remaining = [clause for clause in remaining if literal not in clause]
        if literal.positive:
            rule = _positive_rule(literal.atom, consumed, literal)
            positive.append(rule)
            polarity = POSITIVE
        else:
            rule = _negative_rule(literal.atom, consumed, literal)
            negative.append(rule)
            polarity = NEGATIVE
        log_message(f'Clause {chosen} gives {rule.format(polarity)}', logging.DEBUG)
        trace.append(TraceEntry(chosen, literal, tuple(consumed), rule, polarity))
    return PolarizedRewriteSystem(tuple(negative), tuple(positive)), tuple(trace)


def compile_theory(theory, seed=None, clause_limit=None, atom_limit=None,
                   check_unpolarized_form=True):
    """Present a consistent theory as a polarized rewrite system

    Args:
        theory (Theory): Axioms
        seed (dict or Valuation): Preferred model values
        clause_limit (int): Bound on the clausal form
        atom_limit (int): Bound for the exhaustive unpolarized check
        check_unpolarized_form (bool): Run the unpolarized check when within bounds

    Returns:
        CompileReport: Model, clauses, rules and trace

    Raises:
        InconsistentTheory: When the theory has no model
        SizeLimit: When the clausal form is too large
    """
    if not isinstance(theory, Theory):
        theory = Theory(tuple(theory))
    clausal = to_clausal(theory, clause_limit)
    model = find_model(clausal, seed)
    if model is None:
        raise InconsistentTheory('theory is inconsistent: its clausal form has no model')
    system, trace = extract_rules(clausal, model)
    log_message(f'Compiled {len(theory.axioms)} axioms into {len(system.negative)} negative '
                f'and {len(system.positive)} positive rules', logging.INFO)
    unpolarized = None
    if check_unpolarized_form:
        unpolarized = check_unpolarized(theory, system, atom_limit, strict=False)
    return CompileReport(model, clausal, system, trace, unpolarized)


# -- semantic checks --------------------------------------------------------

@dataclass(frozen=True)
class PresentationVerdict:
    equivalent: bool
    counterexample: object = None

    def to_dict(self):
        return {
            'equivalent': self.equivalent,
            'counterexample': None if self.counterexample is None
            else self.counterexample.as_dict(),
        }


def _compare(theory, axioms, atom_names, limit):
    """First valuation separating two axiom lists, in canonical search order"""
    rows = list(valuations(atom_names, limit))
    for row in rows:
        if satisfies(row, theory.axioms) and not satisfies(row, axioms.axioms):
            return Valuation(row)
    for row in rows:
        if satisfies(row, axioms.axioms) and not satisfies(row, theory.axioms):
            return Valuation(row)
    return None


def verify_presentation(theory, system, atom_limit=None):
    """Truth-table comparison of a theory with the axioms of a rewrite system

    Models of the theory that violate the rule axioms are searched first,
    then the converse, each in canonical valuation order.

    Args:
        theory (Theory): Axioms
        system (PolarizedRewriteSystem): Candidate presentation
        atom_limit (int): Exhaustive bound

    Returns:
        PresentationVerdict: equivalent, or the first separating valuation

    Raises:
        TooManyAtoms: Above the exhaustive bound
    """
    atom_names = theory.atoms() | system.atoms()
    limit = check_atom_limit(atom_names, atom_limit)
    counterexample = _compare(theory, rules_to_axioms(system), atom_names, limit)
    return PresentationVerdict(counterexample is None, counterexample)


def check_unpolarized(theory, system, atom_limit=None, strict=True):
    """Whether the rules read as P <=> A still present the theory

    Args:
        theory (Theory): Axioms
        system (PolarizedRewriteSystem): Rules
        atom_limit (int): Exhaustive bound
        strict (bool): Raise above the bound instead of returning None

    Returns:
        bool or None: Equivalence verdict, None when skipped
    """
    atom_names = theory.atoms() | system.atoms()
    limit = DEFAULT_SETTINGS['atom_limit'] if atom_limit is None else atom_limit
    if not strict and len(atom_names) > limit:
        log_message('Skipping the unpolarized check: too many atoms', logging.WARNING)
        return None
    check_atom_limit(atom_names, limit)
    return _compare(theory, unpolarized_axioms(system), atom_names, limit) is None


def report_to_json(report):
    """Deterministic JSON rendering of a compile report"""
    return json.dumps(report.to_dict(), indent=2) + '\n'


def report_to_text(report):
    return report.format_text()
