"""
Shared strategies, the compiled system corpus and a typed proof-term generator
"""
import functools
import itertools
import random
from dataclasses import dataclass

import pytest
from hypothesis import strategies as st

from polarmod.core.formula import FALSUM, And, Atom, Implies, Or, Theory, parse_theory
from polarmod.core.proof_checker import Context
from polarmod.core.proof_terms import App, Case, ExFalso, Fst, Inl, Inr, Lam, Pair, Snd, Var
from polarmod.core.rewrite_system import (NEGATIVE, PolarizedRewriteSystem, RewriteRule,
                                          head_reducts, parse_rules)
from polarmod.core.theory_compiler import compile_theory


ATOM_NAMES = ('A', 'B', 'C')

CRABBE_THEORY = 'A -> B /\\ ~A\nB /\\ ~A -> A\n'
CRABBE_RULES = 'A ->- false\nB ->- A\n'


@functools.lru_cache(maxsize=None)
def formulas(names=ATOM_NAMES, depth=3):
    """Formulas over `names` and false with at most `depth` nested connectives"""
    leaves = st.sampled_from([Atom(name) for name in names] + [FALSUM])
    if depth == 0:
        return leaves
    below = formulas(names, depth - 1)
    return st.one_of(leaves,
                     st.builds(Implies, below, below),
                     st.builds(And, below, below),
                     st.builds(Or, below, below))


def theories(names=ATOM_NAMES, max_axioms=4, depth=2):
    return st.lists(formulas(names, depth), min_size=1, max_size=max_axioms).map(
        lambda axioms: Theory(tuple(axioms)))


@st.composite
def rule_systems(draw, names=ATOM_NAMES, disjoint=True):
    """At most one rule per atom and polarity; `disjoint` keeps the two lists apart"""
    kinds = ('none', 'neg', 'pos') if disjoint else ('none', 'neg', 'pos', 'both')
    negative, positive = [], []
    for name in names:
        kind = draw(st.sampled_from(kinds))
        if kind in ('neg', 'both'):
            negative.append(RewriteRule(name, draw(formulas(names, 2))))
        if kind in ('pos', 'both'):
            positive.append(RewriteRule(name, draw(formulas(names, 2))))
    return PolarizedRewriteSystem(tuple(negative), tuple(positive))


def bounded_formulas(depth, names=ATOM_NAMES):
    """Every formula over `names` and false with at most `depth` nested connectives"""
    leaves = [Atom(name) for name in names] + [FALSUM]
    if depth == 0:
        return leaves
    below = bounded_formulas(depth - 1, names)
    compound = [connective(left, right)
                for connective in (Implies, And, Or)
                for left, right in itertools.product(below, below)]
    return leaves + compound


def depth_one_formulas(names=ATOM_NAMES):
    """Every formula over `names` and false with at most one connective"""
    return bounded_formulas(1, names)


# -- compiled corpus --------------------------------------------------------

CORPUS_THEORIES = (
    'A -> B',
    'A -> B\nB -> C',
    'A \\/ B',
    '~A',
    'A /\\ B',
    'A -> B /\\ C',
    'A \\/ B -> C',
    'A -> ~B',
    '~A \\/ ~B',
    'A\nB -> C',
    'A -> B \\/ C',
    '(A -> B) -> C',
    CRABBE_THEORY,
    'A \\/ B\n~A \\/ C',
    'A -> B\nB -> A',
    'A /\\ B -> C',
    '~C',
    'A \\/ B \\/ C',
    'C -> A\nC -> B',
    '~(A /\\ B /\\ C)',
    'A -> B -> C',
    'B\nA \\/ ~C',
    '(A -> B) \\/ C',
)

ALL_ONES = {'A': 1, 'B': 1, 'C': 1}


@functools.lru_cache(maxsize=None)
def compiled_corpus():
    """(theory text, seed, system) for every corpus theory, with and without the all-ones seed"""
    corpus = []
    for text in CORPUS_THEORIES:
        theory = parse_theory(text)
        for seed in (None, ALL_ONES):
            report = compile_theory(theory, seed=seed)
            corpus.append((text, seed, report.system))
    return tuple(corpus)


@pytest.fixture(scope='session')
def corpus():
    return compiled_corpus()


@pytest.fixture
def crabbe_system():
    return parse_rules(CRABBE_RULES)


def write(path, text):
    path.write_text(text, encoding='utf-8')
    return str(path)


# -- typed proof terms ------------------------------------------------------

P, Q, R, S, A, G = (Atom(name) for name in 'PQRSAG')

# Disjoint systems used by the reduction suites
TERM_SYSTEMS = (
    PolarizedRewriteSystem(
        (RewriteRule('P', And(Q, R)), RewriteRule('A', FALSUM), RewriteRule('G', Implies(Q, R))),
        (RewriteRule('S', Or(Q, R)),)),
    parse_rules(CRABBE_RULES),
    parse_rules('P ->- Q /\\ (Q -> R)\nR ->- ~S\nS ->+ Q \\/ R\n'),
)


def term_context(system):
    """One hypothesis per atom of the system, named after the atom"""
    return Context(tuple((name.lower(), Atom(name)) for name in sorted(system.atoms())))


class TermGenerator:
    """Random proof terms together with a formula they prove

    Every generated pair (term, formula) checks against the formula and the
    formula is among the ones synthesized for the term, so the pair can be
    plugged into any position of a larger term. Elimination leaves follow
    the negative head reducts of the hypotheses.
    """

    def __init__(self, system, context, seed):
        self.rng = random.Random(seed)
        self.counter = 0
        self.context = context
        atoms = [Atom(name) for name in sorted(system.atoms())]
        rhs = [rule.rhs for rule in system.negative + system.positive]
        self.annotations = tuple(dict.fromkeys(atoms + rhs))
        self.eliminations, self.absurd = [], []
        hypotheses = {formula: name for name, formula in context.bindings}
        for name, formula in context.bindings:
            for reduct in head_reducts(formula, NEGATIVE, system):
                if isinstance(reduct, And):
                    self.eliminations.append((Fst(Var(name)), reduct.lhs))
                    self.eliminations.append((Snd(Var(name)), reduct.rhs))
                elif isinstance(reduct, Implies) and reduct.lhs in hypotheses:
                    self.eliminations.append((App(Var(name), Var(hypotheses[reduct.lhs])),
                                              reduct.rhs))
                elif reduct == FALSUM:
                    self.absurd.append(name)

    def fresh(self):
        self.counter += 1
        return f'x{self.counter}'

    def leaf(self, bindings):
        choices = ['var'] * 2 + ['elim'] * bool(self.eliminations) + ['absurd'] * bool(self.absurd)
        choice = self.rng.choice(choices)
        if choice == 'var':
            name, formula = self.rng.choice(bindings)
            return Var(name), formula
        if choice == 'elim':
            return self.rng.choice(self.eliminations)
        formula = self.rng.choice(self.annotations)
        return ExFalso(formula, Var(self.rng.choice(self.absurd))), formula

    def term(self, bindings, depth):
        if depth == 0 or self.rng.random() < 0.2:
            return self.leaf(bindings)
        kind = self.rng.randrange(8)
        below = depth - 1
        if kind == 0:
            name, ann = self.fresh(), self.rng.choice(self.annotations)
            body, result = self.term(bindings + ((name, ann),), below)
            return Lam(name, ann, body), Implies(ann, result)
        if kind == 1:
            (first, left), (second, right) = self.term(bindings, below), self.term(bindings, below)
            return Pair(first, second), And(left, right)
        if kind == 2:
            body, left = self.term(bindings, below)
            ann = Or(left, self.rng.choice(self.annotations))
            return Inl(ann, body), ann
        if kind == 3:
            body, right = self.term(bindings, below)
            ann = Or(self.rng.choice(self.annotations), right)
            return Inr(ann, body), ann
        if kind == 4:
            name = self.fresh()
            arg, hypothesis = self.term(bindings, below)
            body, result = self.term(bindings + ((name, hypothesis),), below)
            return App(Lam(name, hypothesis, body), arg), result
        if kind == 5:
            (first, left), (second, right) = self.term(bindings, below), self.term(bindings, below)
            if self.rng.random() < 0.5:
                return Fst(Pair(first, second)), left
            return Snd(Pair(first, second)), right
        left_var, right_var = self.fresh(), self.fresh()
        body, proved = self.term(bindings, below)
        if kind == 6:
            branch, result = self.term(bindings + ((left_var, proved),), below)
            return Case(Inl(Or(proved, FALSUM), body),
                        left_var, proved, branch,
                        right_var, FALSUM, ExFalso(result, Var(right_var))), result
        branch, result = self.term(bindings + ((right_var, proved),), below)
        return Case(Inr(Or(FALSUM, proved), body),
                    left_var, FALSUM, ExFalso(result, Var(left_var)),
                    right_var, proved, branch), result


@dataclass(frozen=True)
class TermCorpus:
    system: PolarizedRewriteSystem
    context: Context
    terms: tuple


def typed_terms(system, count, depth=3, seed=0):
    """`count` generated (term, formula) pairs over the hypotheses of `system`"""
    context = term_context(system)
    generator = TermGenerator(system, context, seed)
    return TermCorpus(system, context,
                      tuple(generator.term(context.bindings, depth) for _ in range(count)))


@pytest.fixture(scope='session', params=range(len(TERM_SYSTEMS)))
def term_corpus(request):
    return typed_terms(TERM_SYSTEMS[request.param], 200, seed=request.param)
