"""
Sequents, backward proof search, derivation checking and agreement with the truth-table oracle
"""
import hypothesis
import pytest
from hypothesis import given, settings

from polarmod.core.errors import ParseError
from polarmod.core.formula import FALSUM, And, Atom, Implies, neg, parse_formula
from polarmod.core.oracle import oracle_provable
from polarmod.core.rewrite_system import EMPTY_SYSTEM, parse_rules
from polarmod.core.sequent_prover import (Derivation, Exhausted, Principal, Proved, Rule,
                                          Sequent, check_derivation, derivation_to_text,
                                          format_sequent, parse_sequent, prove)
from polarmod.core.settings import SearchConfig
from polarmod.utils.serialization import derivation_from_json, derivation_to_json

from .conftest import (CRABBE_RULES, bounded_formulas, compiled_corpus, depth_one_formulas,
                       formulas)

A, B, C, P, Q = (Atom(name) for name in 'ABCPQ')

INTUITIONISTIC = SearchConfig(intuitionistic=True)


def proves(text, rules='', config=None):
    return prove(parse_sequent(text), parse_rules(rules), config).proved


@pytest.mark.parametrize('text, expected', [
    ('A, B |- A /\\ B', Sequent((A, B), (And(A, B),))),
    ('|- A -> A', Sequent((), (Implies(A, A),))),
    ('A |-', Sequent((A,), ())),
    ('|-', Sequent()),
])
def test_parse_sequent(text, expected):
    assert parse_sequent(text) == expected


def test_format_sequent():
    assert format_sequent(Sequent((A, B), (Q,))) == 'A, B |- Q'
    assert format_sequent(Sequent((), (neg(A),))) == '|- ~A'
    assert format_sequent(Sequent((A,), ())) == 'A |-'


@pytest.mark.parametrize('text', ['A', 'A |- B |- C', 'A, |- B', 'A |- B /\\'])
def test_malformed_sequents(text):
    with pytest.raises(ParseError):
        parse_sequent(text)


def test_sequent_sides_are_multisets():
    assert Sequent((A, B), ()) == Sequent((B, A), ())
    assert Sequent((A, A), ()) != Sequent((A,), ())
    assert hash(Sequent((A, B), (Q,))) == hash(Sequent((B, A), (Q,)))


def test_axiom_derivation_text():
    result = prove(parse_sequent('P |- P'), EMPTY_SYSTEM)
    assert isinstance(result, Proved)
    assert derivation_to_text(result.derivation) == 'Axiom: P |- P  [P]\n'


def test_axiom_modulo_negative_rewriting():
    result = prove(parse_sequent('P |- Q'), parse_rules('P ->- Q'))
    assert derivation_to_text(result.derivation) == 'Axiom: P |- Q  [Q]\n'
    assert prove(parse_sequent('Q |- P'), parse_rules('P ->- Q')) == Exhausted(1, False)


def test_axiom_modulo_positive_rewriting():
    assert proves('P |- Q', 'Q ->+ P')
    assert not proves('Q |- P', 'Q ->+ P')


def test_crabbe_hypothesis_closes_by_falsum():
    result = prove(parse_sequent('B |-'), parse_rules(CRABBE_RULES))
    assert result.derivation.rule is Rule.BOT_L
    assert result.derivation.principal.reduct == FALSUM


def test_conjunction_commutes():
    result = prove(parse_sequent('A /\\ B |- B /\\ A'), EMPTY_SYSTEM)
    derivation = result.derivation
    assert derivation.rule is Rule.AND_L
    assert derivation.premises[0].rule is Rule.AND_R
    assert derivation.size() == 4
    assert derivation.height() == 3


def test_depth_bound_is_reported():
    result = prove(parse_sequent('A /\\ B |- B /\\ A'), EMPTY_SYSTEM, SearchConfig(depth=1))
    assert result == Exhausted(1, True)
    assert not result.proved


@pytest.mark.parametrize('text', [
    '|- ((A -> B) -> A) -> A',
    '|- A \\/ ~A',
    '|- ~~A -> A',
    '|- (A -> B) \\/ (B -> A)',
])
def test_classical_only_principles(text):
    assert proves(text)
    assert not proves(text, config=INTUITIONISTIC)


@pytest.mark.parametrize('text', [
    'A /\\ B |- B /\\ A',
    'A -> B, B -> C |- A -> C',
    'A \\/ B |- B \\/ A',
    '|- A -> ~~A',
    'A, ~A |- B',
    '|- ~(A /\\ ~A)',
])
def test_intuitionistic_proofs(text):
    assert proves(text, config=INTUITIONISTIC)
    result = prove(parse_sequent(text), EMPTY_SYSTEM, INTUITIONISTIC)
    assert check_derivation(result.derivation, EMPTY_SYSTEM, INTUITIONISTIC).ok


def test_intuitionistic_search_needs_a_single_conclusion():
    assert prove(parse_sequent('A |- A, B'), EMPTY_SYSTEM, INTUITIONISTIC) == Exhausted(1, False)
    assert proves('A |- A, B')


def test_cut_does_not_preempt_logical_rules():
    assert proves('|- A \\/ ~A', config=SearchConfig(allow_cut=True))


def test_check_rejects_a_bad_axiom():
    node = Derivation(Rule.AXIOM, Sequent((Q,), (P,)), Principal('left', 0, P, partner=0))
    verdict = check_derivation(node, parse_rules('P ->- Q'))
    assert not verdict.ok
    assert verdict.path == ()
    assert verdict.reason == 'Q does not rewrite ->- to P'
    assert verdict.format_path() == '<root>'


def test_check_reports_the_path_to_a_bad_premise():
    conjunction = And(A, B)
    leaf = Derivation(Rule.AXIOM, Sequent((conjunction, A, B), (B,)),
                      Principal('left', 0, B, partner=0))
    root = Derivation(Rule.AND_L, Sequent((conjunction,), (B,)),
                      Principal('left', 0, conjunction), (leaf,))
    verdict = check_derivation(root, EMPTY_SYSTEM)
    assert verdict.path == (0,)
    assert verdict.reason == 'A /\\ B does not rewrite ->- to B'
    fixed = Derivation(Rule.AXIOM, leaf.conclusion, Principal('left', 2, B, partner=0))
    assert check_derivation(Derivation(root.rule, root.conclusion, root.principal, (fixed,)),
                            EMPTY_SYSTEM).ok


def test_check_rejects_wrong_arity_and_extra_conclusions():
    conjunction = And(A, B)
    childless = Derivation(Rule.AND_L, Sequent((conjunction,), (B,)),
                           Principal('left', 0, conjunction))
    assert check_derivation(childless, EMPTY_SYSTEM).reason == 'AndL needs 1 premises, got 0'
    axiom = Derivation(Rule.AXIOM, Sequent((A,), (A, B)), Principal('left', 0, A, partner=0))
    assert check_derivation(axiom, EMPTY_SYSTEM).ok
    verdict = check_derivation(axiom, EMPTY_SYSTEM, INTUITIONISTIC)
    assert verdict.reason == 'more than one formula on the right'


def _axiom(left, right, index, partner, reduct):
    return Derivation(Rule.AXIOM, Sequent(left, right),
                      Principal('left', index, reduct, partner=partner))


def test_hand_built_cut_checks():
    cut = Derivation(Rule.CUT, Sequent((A,), (A,)),
                     Principal('cut', formula=B, reducts=(B, B)),
                     (_axiom((A, B), (A,), 0, 0, A), _axiom((A,), (A, B), 0, 0, A)))
    assert check_derivation(cut, EMPTY_SYSTEM).ok
    unbalanced = Derivation(Rule.CUT, cut.conclusion, Principal('cut', formula=B, reducts=(B, A)),
                            cut.premises)
    assert not check_derivation(unbalanced, EMPTY_SYSTEM).ok


def test_cut_puts_the_negative_reduct_on_the_left():
    system = parse_rules('C ->- A\nC ->+ B')
    goal = Sequent((B,), (A,))
    cut = Derivation(Rule.CUT, goal, Principal('cut', formula=C, reducts=(A, B)),
                     (_axiom((B, A), (A,), 1, 0, A), _axiom((B,), (B, A), 0, 0, B)))
    assert check_derivation(cut, system).ok
    assert oracle_provable(goal, system)


def test_cut_with_swapped_sides_is_rejected():
    system = parse_rules('P ->- Q')
    goal = Sequent((Q,), (P,))
    cut = Derivation(Rule.CUT, goal, Principal('cut', formula=P, reducts=(Q, P)),
                     (_axiom((Q,), (P, Q), 0, 1, Q), _axiom((Q, P), (P,), 1, 0, P)))
    verdict = check_derivation(cut, system)
    assert not verdict.ok
    assert verdict.path == ()
    assert verdict.reason == 'premise Q |- P, Q does not match the Cut schema'
    assert not oracle_provable(goal, system)


def test_derivation_json_round_trip():
    result = prove(parse_sequent('A -> B, A |- B /\\ A'), EMPTY_SYSTEM)
    document = derivation_to_json(result.derivation)
    assert document['rule'] == result.derivation.rule.value
    assert derivation_from_json(document) == result.derivation


@pytest.mark.parametrize('side', ['right', 'left'])
def test_prover_agrees_with_the_oracle(corpus, side):
    for text, seed, system in corpus:
        for formula in depth_one_formulas():
            sequent = Sequent((), (formula,)) if side == 'right' else Sequent((formula,), ())
            result = prove(sequent, system)
            assert result.proved == oracle_provable(sequent, system), (text, seed, str(sequent))
            if result.proved:
                assert check_derivation(result.derivation, system).ok


def test_every_depth_two_goal_agrees_with_the_oracle(corpus):
    goals = bounded_formulas(2)
    for text, seed, system in corpus:
        for formula in goals:
            sequent = Sequent((), (formula,))
            assert prove(sequent, system).proved == oracle_provable(sequent, system), \
                (text, seed, str(sequent))


@hypothesis.seed(20241019)
@given(formulas(depth=2))
@settings(max_examples=200, deadline=None)
def test_depth_two_hypotheses_agree_with_the_oracle(formula):
    sequent = Sequent((formula,), ())
    for text, _, system in compiled_corpus():
        assert prove(sequent, system).proved == oracle_provable(sequent, system), \
            (text, str(sequent))


def test_intuitionistic_proofs_are_classical(corpus):
    for text, _, system in corpus[::2]:
        for formula in depth_one_formulas():
            sequent = Sequent((), (formula,))
            result = prove(sequent, system, INTUITIONISTIC)
            if result.proved:
                assert check_derivation(result.derivation, system, INTUITIONISTIC).ok
                assert oracle_provable(sequent, system), (text, str(formula))


def test_parse_formula_inside_sequents_matches_parse_formula():
    assert parse_sequent('A -> B |- B').left == (parse_formula('A -> B'),)
