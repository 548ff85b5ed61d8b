"""
Clausal form: negation normal form, distribution and pruning
"""
import pytest
from hypothesis import given, settings

from polarmod.core.clausal import (Clause, Literal, clause_to_formula, prune, to_clausal,
                                   to_nnf)
from polarmod.core.errors import SizeLimit
from polarmod.core.formula import FALSUM, TOP, And, Atom, Or, is_negation, parse_theory
from polarmod.core.semantics import evaluate, satisfies, valuations
from polarmod.core.theory_compiler import find_model

from .conftest import CRABBE_THEORY, theories

SIX_ATOMS = ('A', 'B', 'C', 'D', 'E', 'F')


def clause_texts(text):
    return [str(clause) for clause in to_clausal(parse_theory(text))]


@pytest.mark.parametrize('text, expected', [
    (CRABBE_THEORY, ['~A', 'A \\/ ~B']),
    ('(A -> B /\\ ~A) /\\ (B /\\ ~A -> A)', ['~A', 'A \\/ ~B']),
    ('P -> Q', ['~P \\/ Q']),
    ('A \\/ B /\\ C', ['A \\/ B', 'A \\/ C']),
    ('A \\/ ~A', []),
    ('false', ['false']),
    ('~false', []),
    ('A /\\ A\nA \\/ B', ['A']),
])
def test_clausal_form_goldens(text, expected):
    assert clause_texts(text) == expected


def test_clause_to_formula():
    assert clause_to_formula(Clause()) == FALSUM
    assert str(clause_to_formula(Clause((Literal('A', False),)))) == '~A'
    assert str(clause_to_formula(Clause((Literal('Q'), Literal('P', False))))) == '~P \\/ Q'


def test_literals_sort_negative_first():
    clause = Clause((Literal('B'), Literal('A'), Literal('A', False), Literal('A')))
    assert [str(literal) for literal in clause.literals] == ['~A', 'A', 'B']
    assert clause.is_tautology()


def test_prune_keeps_first_appearance_order():
    short = Clause((Literal('A', False),))
    longer = Clause((Literal('A', False), Literal('B')))
    other = Clause((Literal('C'),))
    assert prune([longer, other, short, other]) == [other, short]


def test_clause_limit():
    with pytest.raises(SizeLimit):
        to_clausal(parse_theory('(A /\\ B) \\/ (C /\\ D)'), clause_limit=3)
    assert len(to_clausal(parse_theory('(A /\\ B) \\/ (C /\\ D)'), clause_limit=4)) == 4


def _is_nnf(formula):
    if isinstance(formula, Atom):
        return True
    if is_negation(formula):
        return isinstance(formula.lhs, Atom)
    if isinstance(formula, (And, Or)):
        return _is_nnf(formula.lhs) and _is_nnf(formula.rhs)
    return False


@given(theories(SIX_ATOMS, max_axioms=3, depth=3))
@settings(max_examples=200, deadline=None)
def test_nnf_is_equivalent_and_constant_free(theory):
    for axiom in theory.axioms:
        nnf = to_nnf(axiom)
        assert nnf in (FALSUM, TOP) or _is_nnf(nnf)
        for row in valuations(axiom.atoms()):
            assert evaluate(nnf, row) == evaluate(axiom, row)


@given(theories(SIX_ATOMS, max_axioms=4, depth=3))
@settings(max_examples=200, deadline=None)
def test_clausal_form_is_equivalent(theory):
    clauses = to_clausal(theory)
    clause_formulas = clauses.to_formulas()
    assert clauses.atoms <= theory.atoms()
    for row in valuations(theory.atoms()):
        assert satisfies(row, theory.axioms) == satisfies(row, clause_formulas)
    for clause in clauses:
        assert not clause.is_tautology()
        assert not any(other != clause and other.subsumes(clause) for other in clauses)


@given(theories(SIX_ATOMS, max_axioms=4, depth=3))
@settings(max_examples=200, deadline=None)
def test_find_model_satisfies_its_clauses(theory):
    clauses = to_clausal(theory)
    model = find_model(clauses)
    satisfiable = any(satisfies(row, theory.axioms) for row in valuations(theory.atoms()))
    assert (model is not None) == satisfiable
    if model is not None:
        assert model.atoms == clauses.atoms
        assert satisfies(model.as_dict(), clauses.to_formulas())
