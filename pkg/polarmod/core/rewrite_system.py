"""
Polarized rewrite systems and the polarized rewriting relations
"""
import enum
import logging
import re
from collections import deque
from dataclasses import dataclass, field

from .errors import CapExceeded, Inconclusive, ParseError, RuleSystemError
from .formula import (BINARY_CONNECTIVES, And, Atom, Implies, Or, Theory,
                      byte_offset, format_formula, is_identifier, neg,
                      ordering_key, parse_formula)
from .formula import atoms as formula_atoms
from .settings import RewriteBounds
from ..utils.log_helpers import log_message


class Polarity(enum.Enum):
    NEGATIVE = '-'
    POSITIVE = '+'

    def flip(self):
        return Polarity.POSITIVE if self is Polarity.NEGATIVE else Polarity.NEGATIVE

    @property
    def arrow(self):
        return '->' + self.value


NEGATIVE = Polarity.NEGATIVE
POSITIVE = Polarity.POSITIVE


@dataclass(frozen=True)
class RewriteRule:
    """P --> A with an atomic left-hand side"""
    lhs: str
    rhs: object

    def __post_init__(self):
        lhs = self.lhs.name if isinstance(self.lhs, Atom) else self.lhs
        if not is_identifier(lhs):
            raise RuleSystemError(f'Rule left-hand side must be an atom, got {self.lhs!r}')
        object.__setattr__(self, 'lhs', lhs)

    def format(self, polarity):
        return f'{self.lhs} {polarity.arrow} {format_formula(self.rhs)}'


@dataclass(frozen=True)
class PolarizedRewriteSystem:
    """A pair of rule lists: negative rules and positive rules

    At most one rule per atom and polarity.
    """
    negative: tuple = ()
    positive: tuple = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'negative', tuple(self.negative))
        object.__setattr__(self, 'positive', tuple(self.positive))
        index = {}
        for polarity, rules in ((NEGATIVE, self.negative), (POSITIVE, self.positive)):
            for rule in rules:
                key = (rule.lhs, polarity)
                if key in index:
                    raise RuleSystemError(
                        f'Atom {rule.lhs} has more than one {polarity.name.lower()} rule')
                index[key] = rule
        object.__setattr__(self, '_index', index)

    def rules(self, polarity):
        return self.negative if polarity is NEGATIVE else self.positive

    def rule_for(self, atom_name, polarity):
        return self._index.get((atom_name, polarity))

    def atoms(self):
        found = set()
        for rule in self.negative + self.positive:
            found.add(rule.lhs)
            found |= formula_atoms(rule.rhs)
        return found

    @property
    def is_disjoint(self):
        return not ({rule.lhs for rule in self.negative} & {rule.lhs for rule in self.positive})

    def __len__(self):
        return len(self.negative) + len(self.positive)


EMPTY_SYSTEM = PolarizedRewriteSystem()


def _rewrites(formula, polarity, system):
    """Yield one-step reducts left to right, outermost first"""
    if isinstance(formula, Atom):
        rule = system.rule_for(formula.name, polarity)
        if rule is not None:
            yield rule.rhs
    elif isinstance(formula, Implies):
        for reduct in _rewrites(formula.lhs, polarity.flip(), system):
            yield Implies(reduct, formula.rhs)
        for reduct in _rewrites(formula.rhs, polarity, system):
            yield Implies(formula.lhs, reduct)
    elif isinstance(formula, (And, Or)):
        constructor = type(formula)
        for reduct in _rewrites(formula.lhs, polarity, system):
            yield constructor(reduct, formula.rhs)
        for reduct in _rewrites(formula.rhs, polarity, system):
            yield constructor(formula.lhs, reduct)


def one_step_list(formula, polarity, system):
    """One-step reducts in discovery order, without duplicates"""
    seen = []
    for reduct in _rewrites(formula, polarity, system):
        if reduct not in seen:
            seen.append(reduct)
    return seen


def one_step(formula, polarity, system):
    """All formulas reachable in exactly one polarized step

    The polarity flips when entering the left side of an implication and
    selects which rule list applies at an atom occurrence.

    Args:
        formula (Formula): Start formula
        polarity (Polarity): Polarity of the occurrence
        system (PolarizedRewriteSystem): Rules

    Returns:
        frozenset: Reducts, empty when there is no redex
    """
    return frozenset(_rewrites(formula, polarity, system))


@dataclass(frozen=True)
class Reachability:
    """Result of a bounded closure computation

    Attributes:
        formulas (tuple): Reached formulas in BFS order, start first
        complete (bool): True when the closure was exhausted within the bounds
        capped (bool): True when the size cap stopped the search
    """
    formulas: tuple
    complete: bool
    capped: bool = False

    def __contains__(self, formula):
        return formula in self.formulas


def explore(formula, polarity, system, bounds=None):
    """Breadth-first reflexive-transitive closure under a size and depth bound

    Never raises; truncation is reported through the result flags.
    """
    bounds = bounds or RewriteBounds()
    seen = {formula}
    order = [formula]
    frontier = deque([formula])
    for _ in range(bounds.depth):
        following = deque()
        for current in frontier:
            for reduct in _rewrites(current, polarity, system):
                if reduct in seen:
                    continue
                if len(order) >= bounds.cap:
                    return Reachability(tuple(order), False, True)
                seen.add(reduct)
                order.append(reduct)
                following.append(reduct)
        frontier = following
        if not frontier:
            return Reachability(tuple(order), True)
    exhausted = all(reduct in seen
                    for current in frontier
                    for reduct in _rewrites(current, polarity, system))
    return Reachability(tuple(order), exhausted)


def reachable(formula, polarity, system, depth=None, cap=None):
    """Formulas reachable in at most `depth` steps, the start included

    Args:
        formula (Formula): Start formula
        polarity (Polarity): Rewriting polarity
        system (PolarizedRewriteSystem): Rules
        depth (int): Step bound, defaults to the configured rewrite depth
        cap (int): Size bound, defaults to the configured rewrite cap

    Returns:
        frozenset: Reached formulas

    Raises:
        CapExceeded: When more than `cap` formulas are reachable
    """
    defaults = RewriteBounds()
    depth = defaults.depth if depth is None else depth
    cap = defaults.cap if cap is None else cap
    if cap == 0:
        raise CapExceeded(frozenset([formula]), cap)
    if depth == 0:
        return frozenset([formula])
    result = explore(formula, polarity, system, RewriteBounds(depth, cap))
    if result.capped:
        log_message(f'Reachability from {format_formula(formula)} hit cap {cap}',
                    logging.WARNING)
        raise CapExceeded(frozenset(result.formulas), cap)
    return frozenset(result.formulas)


def find_join(left, right, system, bounds=None):
    """Smallest C with left -->- C <--+ right

    Returns:
        tuple: (witness or None, whether both closures were exhausted)
    """
    down = explore(left, NEGATIVE, system, bounds)
    up = explore(right, POSITIVE, system, bounds)
    common = set(down.formulas) & set(up.formulas)
    complete = down.complete and up.complete
    if not common:
        return None, complete
    return min(common, key=ordering_key), complete


def joinable(left, right, system, depth=None, cap=None):
    """Join witness for the axiom side condition left -->- C <--+ right

    Args:
        left (Formula): Hypothesis side, rewritten negatively
        right (Formula): Conclusion side, rewritten positively
        system (PolarizedRewriteSystem): Rules
        depth (int): Step bound
        cap (int): Size bound

    Returns:
        Formula or None: Smallest witness by size then printing

    Raises:
        Inconclusive: No witness found but a search was truncated
    """
    defaults = RewriteBounds()
    bounds = RewriteBounds(defaults.depth if depth is None else depth,
                           defaults.cap if cap is None else cap)
    witness, complete = find_join(left, right, system, bounds)
    if witness is None and not complete:
        raise Inconclusive(
            f'No join of {format_formula(left)} and {format_formula(right)} within bounds')
    return witness


def head_reducts(formula, polarity, system):
    """Reducts obtained by rewriting at the root only

    Starting from the formula, follow the rule of the polarity while the
    current formula is an atom. Any reduct of the formula whose main
    connective is a connective is reached from one of these by rewriting
    strictly inside it.
    """
    chain = [formula]
    current = formula
    while isinstance(current, Atom):
        rule = system.rule_for(current.name, polarity)
        if rule is None or rule.rhs in chain:
            break
        current = rule.rhs
        chain.append(current)
    return chain


@dataclass(frozen=True)
class DisjointnessReport:
    disjoint: bool
    clashes: tuple
    rule_count_neg: int
    rule_count_pos: int

    @property
    def commute(self):
        # atomic left-hand sides leave no critical pairs once they are disjoint
        return self.disjoint

    def to_dict(self):
        return {
            'disjoint': self.disjoint,
            'clashes': list(self.clashes),
            'rule_count_neg': self.rule_count_neg,
            'rule_count_pos': self.rule_count_pos,
        }


def check_disjoint(system):
    """Report atoms that have both a negative and a positive rule"""
    negative = {rule.lhs for rule in system.negative}
    positive = {rule.lhs for rule in system.positive}
    clashes = tuple(sorted(negative & positive))
    return DisjointnessReport(not clashes, clashes, len(system.negative), len(system.positive))


def rules_to_axioms(system):
    """Axiom presentation: P => A per negative rule, A => P per positive rule"""
    axioms = [Implies(Atom(rule.lhs), rule.rhs) for rule in system.negative]
    axioms.extend(Implies(rule.rhs, Atom(rule.lhs)) for rule in system.positive)
    return Theory(tuple(axioms))


def unpolarized_axioms(system):
    """Axioms P <=> A, reading every rule without polarity"""
    return Theory(tuple(And(Implies(Atom(rule.lhs), rule.rhs), Implies(rule.rhs, Atom(rule.lhs)))
                        for rule in system.negative + system.positive))


def depolarize(system):
    """The same rules usable at both polarities

    Raises:
        RuleSystemError: When an atom has different negative and positive rules
    """
    merged = {}
    for rule in system.negative + system.positive:
        previous = merged.setdefault(rule.lhs, rule)
        if previous.rhs != rule.rhs:
            raise RuleSystemError(f'Atom {rule.lhs} has two different rules')
    rules = tuple(merged.values())
    return PolarizedRewriteSystem(rules, rules)


def _double_negation(formula):
    if isinstance(formula, BINARY_CONNECTIVES):
        inner = type(formula)(_double_negation(formula.lhs), _double_negation(formula.rhs))
        return neg(neg(inner))
    return neg(neg(formula))


def light_dneg(formula):
    """Light double negation A''

    Atoms and false are unchanged at the top; below a connective every
    subformula is wrapped in ~~.
    """
    if isinstance(formula, BINARY_CONNECTIVES):
        return type(formula)(_double_negation(formula.lhs), _double_negation(formula.rhs))
    return formula


def classical_variant(system):
    """Replace every rule P --> A by P --> A''"""
    return PolarizedRewriteSystem(
        tuple(RewriteRule(rule.lhs, light_dneg(rule.rhs)) for rule in system.negative),
        tuple(RewriteRule(rule.lhs, light_dneg(rule.rhs)) for rule in system.positive))


# -- rules file codec -------------------------------------------------------

_RULE_LINE = re.compile(r'\s*(?P<lhs>\S+?)\s*->(?P<sign>[-+])(?P<rhs>.*)\Z', re.DOTALL)


def parse_rules(text):
    """Parse a rules file of `P ->- F` and `P ->+ F` lines

    Args:
        text (str): File contents

    Returns:
        PolarizedRewriteSystem: Rules in file order

    Raises:
        ParseError: Malformed line or formula
        RuleSystemError: Non-atomic left-hand side or duplicate rule
    """
    negative, positive = [], []
    position = 0
    for line in text.splitlines(keepends=True):
        content = line.split('#', 1)[0].rstrip('\r\n')
        if content.strip():
            match = _RULE_LINE.match(content)
            if match is None:
                raise ParseError(f'Expected `P ->- F` or `P ->+ F`, got {content.strip()!r}',
                                 byte_offset(text, position), '->- or ->+')
            if not is_identifier(match.group('lhs')):
                raise RuleSystemError(
                    f'Rule left-hand side must be an atom, got {match.group("lhs")!r}')
            try:
                rhs = parse_formula(match.group('rhs'))
            except ParseError as e:
                offset = byte_offset(text, position + match.start('rhs')) + e.offset
                raise ParseError(f'Invalid rule {content.strip()!r}: {e.expected}',
                                 offset, e.expected) from None
            rule = RewriteRule(match.group('lhs'), rhs)
            (negative if match.group('sign') == '-' else positive).append(rule)
        position += len(line)
    return PolarizedRewriteSystem(tuple(negative), tuple(positive))


def format_rules(system):
    """Render a system as rules file text, negative rules first"""
    lines = [rule.format(NEGATIVE) for rule in system.negative]
    lines.extend(rule.format(POSITIVE) for rule in system.positive)
    return ''.join(line + '\n' for line in lines)
