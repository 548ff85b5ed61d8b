"""
Classical valuations and truth-table enumeration
"""
import pytest
from hypothesis import given

from polarmod.core.errors import MissingAtom, TooManyAtoms
from polarmod.core.formula import FALSUM, Implies, neg, parse_formula
from polarmod.core.semantics import (Valuation, check_atom_limit, evaluate, satisfies,
                                     valuations)

from .conftest import ATOM_NAMES, formulas


def test_evaluate_examples():
    assert evaluate(FALSUM, {}) is False
    assert evaluate(parse_formula('A -> B'), {'A': 0, 'B': 0}) is True
    assert evaluate(parse_formula('A -> B'), {'A': 1, 'B': 0}) is False
    crabbe = parse_formula('(A -> B /\\ ~A) /\\ (B /\\ ~A -> A)')
    assert evaluate(crabbe, Valuation({'A': 0, 'B': 0})) is True
    assert evaluate(crabbe, {'A': 0, 'B': 1}) is False


def test_evaluate_requires_total_valuation():
    with pytest.raises(MissingAtom) as excinfo:
        evaluate(parse_formula('A /\\ B'), {'A': 1})
    assert excinfo.value.name == 'B'


@given(formulas())
def test_negation_flips_truth_value(formula):
    for row in valuations(ATOM_NAMES):
        assert evaluate(neg(formula), row) == (not evaluate(formula, row))


def test_valuations_are_enumerated_in_canonical_order():
    rows = list(valuations(['B', 'A', 'B']))
    assert rows == [{'A': 0, 'B': 0}, {'A': 0, 'B': 1}, {'A': 1, 'B': 0}, {'A': 1, 'B': 1}]
    assert list(valuations([])) == [{}]


def test_valuations_refuse_too_many_atoms():
    with pytest.raises(TooManyAtoms):
        list(valuations(['A', 'B', 'C'], limit=2))
    with pytest.raises(TooManyAtoms):
        check_atom_limit(['A', 'B'], limit=1)
    assert check_atom_limit(['A']) == 20


def test_valuation_is_sorted_and_printable():
    valuation = Valuation({'B': 1, 'A': 0})
    assert str(valuation) == '{A=0, B=1}'
    assert valuation['B'] == 1
    assert 'A' in valuation and 'C' not in valuation
    assert valuation == Valuation.from_dict({'A': 0, 'B': True})
    with pytest.raises(MissingAtom):
        valuation['C']


def test_satisfies_is_conjunctive():
    row = {'A': 1, 'B': 0}
    assert satisfies(row, [parse_formula('A'), Implies(parse_formula('B'), FALSUM)])
    assert not satisfies(row, [parse_formula('A'), parse_formula('B')])
    assert satisfies(row, [])
