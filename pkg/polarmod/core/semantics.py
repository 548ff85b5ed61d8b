"""
Classical two-valued semantics: valuations, evaluation, truth tables
"""
import itertools
from dataclasses import dataclass

from .errors import MissingAtom, TooManyAtoms
from .formula import And, Atom, Falsum, Implies, Or
from .settings import DEFAULT_SETTINGS


@dataclass(frozen=True)
class Valuation:
    """Total map from a finite atom set to {0, 1}

    Stored as a sorted tuple of (atom, value) pairs so that valuations are
    hashable and print deterministically.
    """
    assignment: tuple = ()

    def __post_init__(self):
        items = self.assignment
        if isinstance(items, dict):
            items = items.items()
        normalized = tuple(sorted((str(name), 1 if value else 0) for name, value in items))
        object.__setattr__(self, 'assignment', normalized)

    @classmethod
    def from_dict(cls, mapping):
        return cls(tuple(mapping.items()))

    def as_dict(self):
        return dict(self.assignment)

    @property
    def atoms(self):
        return frozenset(name for name, _ in self.assignment)

    def __getitem__(self, name):
        for atom, value in self.assignment:
            if atom == name:
                return value
        raise MissingAtom(name)

    def __contains__(self, name):
        return any(atom == name for atom, _ in self.assignment)

    def __str__(self):
        return '{' + ', '.join(f'{atom}={value}' for atom, value in self.assignment) + '}'


def evaluate(formula, valuation):
    """Classical truth value of a formula

    Args:
        formula (Formula): Formula to evaluate
        valuation (Valuation or dict): Values of the atoms

    Returns:
        bool: Truth value

    Raises:
        MissingAtom: When an atom of the formula has no value
    """
    values = valuation.as_dict() if isinstance(valuation, Valuation) else valuation
    return _evaluate(formula, values)


def _evaluate(formula, values):
    if isinstance(formula, Atom):
        if formula.name not in values:
            raise MissingAtom(formula.name)
        return bool(values[formula.name])
    if isinstance(formula, Falsum):
        return False
    if isinstance(formula, Implies):
        return (not _evaluate(formula.lhs, values)) or _evaluate(formula.rhs, values)
    if isinstance(formula, And):
        return _evaluate(formula.lhs, values) and _evaluate(formula.rhs, values)
    if isinstance(formula, Or):
        return _evaluate(formula.lhs, values) or _evaluate(formula.rhs, values)
    raise TypeError(f'Not a formula: {formula!r}')


def satisfies(valuation, formulas):
    """True when every formula holds under the valuation"""
    values = valuation.as_dict() if isinstance(valuation, Valuation) else valuation
    return all(_evaluate(formula, values) for formula in formulas)


def valuations(atom_names, limit=None):
    """Enumerate all valuations of an atom set in canonical order

    Atoms are sorted by name; the all-zero row comes first and the last atom
    varies fastest.

    Args:
        atom_names (iterable): Atoms to assign
        limit (int): Refuse to enumerate more atoms than this

    Yields:
        dict: One assignment per row
    """
    names = sorted(set(atom_names))
    if limit is not None and len(names) > limit:
        raise TooManyAtoms(len(names), limit)
    for row in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, row))


def check_atom_limit(atom_names, limit=None):
    """Raise TooManyAtoms above the exhaustive bound"""
    limit = DEFAULT_SETTINGS['atom_limit'] if limit is None else limit
    count = len(set(atom_names))
    if count > limit:
        raise TooManyAtoms(count, limit)
    return limit
