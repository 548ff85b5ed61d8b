"""
Clausal form of theories: NNF, distribution, tautology and subsumption pruning
"""
import logging
from dataclasses import dataclass

from .errors import SizeLimit
from .formula import (FALSUM, TOP, And, Atom, Falsum, Implies, Or, Theory,
                      disjoin, is_negation, neg)
from .settings import DEFAULT_SETTINGS
from ..utils.log_helpers import log_message


@dataclass(frozen=True, order=True)
class Literal:
    """An atom or its negation; sorts by atom, negative first"""
    atom: str
    positive: bool = True

    def complement(self):
        return Literal(self.atom, not self.positive)

    def to_formula(self):
        return Atom(self.atom) if self.positive else neg(Atom(self.atom))

    def satisfied_by(self, valuation):
        return bool(valuation[self.atom]) == self.positive

    def __str__(self):
        return self.atom if self.positive else '~' + self.atom


@dataclass(frozen=True)
class Clause:
    """Duplicate-free disjunction of literals in canonical order"""
    literals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'literals', tuple(sorted(set(self.literals))))

    @property
    def atoms(self):
        return frozenset(literal.atom for literal in self.literals)

    def is_tautology(self):
        members = set(self.literals)
        return any(literal.complement() in members for literal in members)

    def subsumes(self, other):
        return set(self.literals) <= set(other.literals)

    def without(self, literal):
        return Clause(tuple(item for item in self.literals if item != literal))

    def __contains__(self, literal):
        return literal in self.literals

    def __len__(self):
        return len(self.literals)

    def __str__(self):
        return str(clause_to_formula(self))


@dataclass(frozen=True)
class ClauseSet:
    """Ordered clauses with no tautologies and no subsumed members"""
    clauses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'clauses', tuple(self.clauses))

    @property
    def atoms(self):
        found = set()
        for clause in self.clauses:
            found |= clause.atoms
        return frozenset(found)

    def to_formulas(self):
        return [clause_to_formula(clause) for clause in self.clauses]

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self):
        return len(self.clauses)


def clause_to_formula(clause):
    """Disjunction of the literals in canonical order; the empty clause is false"""
    return disjoin([literal.to_formula() for literal in clause.literals], empty=FALSUM)


def _nnf_and(left, right):
    if left == FALSUM or right == FALSUM:
        return FALSUM
    if left == TOP:
        return right
    if right == TOP:
        return left
    return And(left, right)


def _nnf_or(left, right):
    if left == TOP or right == TOP:
        return TOP
    if left == FALSUM:
        return right
    if right == FALSUM:
        return left
    return Or(left, right)


def to_nnf(formula, positive=True):
    """Negation normal form

    The result is built from And, Or and literals (~P for negated atoms).
    Constants are absorbed, so false or ~false only appear as the whole result.

    Args:
        formula (Formula): Input formula
        positive (bool): False to normalize the negation of the formula

    Returns:
        Formula: Classically equivalent NNF
    """
    if isinstance(formula, Atom):
        return formula if positive else neg(formula)
    if isinstance(formula, Falsum):
        return FALSUM if positive else TOP
    if isinstance(formula, And):
        combine = _nnf_and if positive else _nnf_or
        return combine(to_nnf(formula.lhs, positive), to_nnf(formula.rhs, positive))
    if isinstance(formula, Or):
        combine = _nnf_or if positive else _nnf_and
        return combine(to_nnf(formula.lhs, positive), to_nnf(formula.rhs, positive))
    if isinstance(formula, Implies):
        if positive:
            return _nnf_or(to_nnf(formula.lhs, False), to_nnf(formula.rhs, True))
        return _nnf_and(to_nnf(formula.lhs, True), to_nnf(formula.rhs, False))
    raise TypeError(f'Not a formula: {formula!r}')


def _distribute(nnf, limit):
    """Clauses of an NNF formula as lists of literals, in production order"""
    if nnf == FALSUM:
        return [[]]
    if nnf == TOP:
        return []
    if isinstance(nnf, Atom):
        return [[Literal(nnf.name, True)]]
    if is_negation(nnf) and isinstance(nnf.lhs, Atom):
        return [[Literal(nnf.lhs.name, False)]]
    if isinstance(nnf, And):
        clauses = _distribute(nnf.lhs, limit) + _distribute(nnf.rhs, limit)
    elif isinstance(nnf, Or):
        left = _distribute(nnf.lhs, limit)
        right = _distribute(nnf.rhs, limit)
        if len(left) * len(right) > limit:
            raise SizeLimit(limit)
        clauses = [first + second for first in left for second in right]
    else:
        raise TypeError(f'Not in negation normal form: {nnf!r}')
    if len(clauses) > limit:
        raise SizeLimit(limit)
    return clauses


def prune(clauses):
    """Drop tautologies, duplicates and subsumed clauses; keep first-appearance order"""
    candidates = []
    for clause in clauses:
        if clause.is_tautology() or clause in candidates:
            continue
        candidates.append(clause)
    kept = []
    for clause in candidates:
        subsumed = any(other != clause and other.subsumes(clause) for other in candidates)
        if not subsumed:
            kept.append(clause)
    return kept


def to_clausal(theory, clause_limit=None):
    """Clausal form of a theory

    NNF first, then distribution; no fresh atoms are introduced so the result is
    classically equivalent to the theory.

    Args:
        theory (Theory): Axioms
        clause_limit (int): Maximum number of distributed clauses

    Returns:
        ClauseSet: Pruned clauses in first-appearance order

    Raises:
        SizeLimit: When distribution exceeds the clause limit
    """
    if clause_limit is None:
        clause_limit = DEFAULT_SETTINGS['clause_limit']
    if not isinstance(theory, Theory):
        theory = Theory(tuple(theory))
    produced = []
    for axiom in theory.axioms:
        produced.extend(Clause(tuple(literals))
                        for literals in _distribute(to_nnf(axiom), clause_limit))
        if len(produced) > clause_limit:
            raise SizeLimit(clause_limit)
    clauses = prune(produced)
    log_message(f'Clausal form: {len(produced)} clauses distributed, {len(clauses)} kept',
                logging.DEBUG)
    return ClauseSet(tuple(clauses))
