"""
Backward proof search and derivation checking for polarized sequent calculus modulo
"""
import enum
import logging
from collections import Counter
from dataclasses import dataclass, field

from .errors import ParseError
from .formula import (FALSUM, And, Atom, Implies, Or, atoms, byte_offset, format_formula,
                      parse_formula)
from .rewrite_system import NEGATIVE, POSITIVE, explore, head_reducts
from .settings import SearchConfig
from ..utils.log_helpers import log_message


TURNSTILE = '|-'


@dataclass(frozen=True, eq=False)
class Sequent:
    """Gamma |- Delta; both sides compare as multisets"""
    left: tuple = ()
    right: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'left', tuple(self.left))
        object.__setattr__(self, 'right', tuple(self.right))

    def __eq__(self, other):
        if not isinstance(other, Sequent):
            return NotImplemented
        return Counter(self.left) == Counter(other.left) and \
            Counter(self.right) == Counter(other.right)

    def __hash__(self):
        return hash((frozenset(Counter(self.left).items()),
                     frozenset(Counter(self.right).items())))

    def atoms(self):
        found = set()
        for formula in self.left + self.right:
            found |= atoms(formula)
        return found

    def __str__(self):
        return format_sequent(self)


def _parse_side(text, start, whole):
    formulas = []
    if not text.strip():
        return formulas
    position = start
    for part in text.split(','):
        if not part.strip():
            raise ParseError('Empty formula in sequent', byte_offset(whole, position), 'formula')
        try:
            formulas.append(parse_formula(part))
        except ParseError as e:
            raise ParseError(f'Invalid sequent formula {part.strip()!r}: {e.expected}',
                             byte_offset(whole, position) + e.offset, e.expected) from None
        position += len(part) + 1
    return formulas


def parse_sequent(text):
    """Parse `A, B |- C, D`; either side may be empty

    Raises:
        ParseError: Missing or repeated turnstile, or a malformed formula
    """
    if text.count(TURNSTILE) != 1:
        index = text.find(TURNSTILE, text.find(TURNSTILE) + 1) if TURNSTILE in text else len(text)
        raise ParseError(f'Sequent needs exactly one {TURNSTILE}', byte_offset(text, index),
                         TURNSTILE)
    split = text.index(TURNSTILE)
    left = _parse_side(text[:split], 0, text)
    right = _parse_side(text[split + len(TURNSTILE):], split + len(TURNSTILE), text)
    return Sequent(tuple(left), tuple(right))


def format_sequent(sequent):
    left = ', '.join(format_formula(formula) for formula in sequent.left)
    right = ', '.join(format_formula(formula) for formula in sequent.right)
    return f'{left} {TURNSTILE} {right}'.strip()


class Rule(enum.Enum):
    AXIOM = 'Axiom'
    CUT = 'Cut'
    CONTR_L = 'ContrL'
    CONTR_R = 'ContrR'
    WEAK_L = 'WeakL'
    WEAK_R = 'WeakR'
    IMP_L = 'ImpL'
    IMP_R = 'ImpR'
    AND_L = 'AndL'
    AND_R = 'AndR'
    OR_L = 'OrL'
    OR_R = 'OrR'
    BOT_L = 'BotL'


ARITY = {
    Rule.AXIOM: 0, Rule.BOT_L: 0,
    Rule.IMP_R: 1, Rule.AND_L: 1, Rule.OR_R: 1,
    Rule.CONTR_L: 1, Rule.CONTR_R: 1, Rule.WEAK_L: 1, Rule.WEAK_R: 1,
    Rule.CUT: 2, Rule.IMP_L: 2, Rule.AND_R: 2, Rule.OR_L: 2,
}

# Connective and side of the principal formula for the logical rules
LOGICAL_RULES = {
    Rule.AND_L: (And, 'left'),
    Rule.OR_R: (Or, 'right'),
    Rule.IMP_R: (Implies, 'right'),
    Rule.AND_R: (And, 'right'),
    Rule.OR_L: (Or, 'left'),
    Rule.IMP_L: (Implies, 'left'),
}


@dataclass(frozen=True)
class Principal:
    """Principal position and the reducts witnessing the side condition

    Attributes:
        side (str): 'left', 'right' or 'cut'
        index (int): Position of the principal formula on its side
        reduct (Formula): Reduct of the connective shape, or the axiom join
        partner (int): Right-hand index of the axiom partner
        formula (Formula): Cut formula
        reducts (tuple): Reduct pair of cut and contraction nodes
    """
    side: str = None
    index: int = None
    reduct: object = None
    partner: int = None
    formula: object = None
    reducts: tuple = ()


@dataclass(frozen=True)
class Derivation:
    rule: Rule
    conclusion: Sequent
    principal: Principal = field(default_factory=Principal)
    premises: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'premises', tuple(self.premises))

    def size(self):
        return 1 + sum(premise.size() for premise in self.premises)

    def height(self):
        return 1 + max((premise.height() for premise in self.premises), default=0)

    def format_text(self, indent=0):
        """Indented tree, conclusion first"""
        witness = ''
        if self.principal.reduct is not None:
            witness = f'  [{format_formula(self.principal.reduct)}]'
        lines = [f'{"  " * indent}{self.rule.value}: {self.conclusion}{witness}']
        for premise in self.premises:
            lines.append(premise.format_text(indent + 1))
        return '\n'.join(lines)


@dataclass(frozen=True)
class Proved:
    derivation: Derivation

    @property
    def proved(self):
        return True


@dataclass(frozen=True)
class Exhausted:
    """Search gave up; not a disproof

    Attributes:
        frontier (int): Open leaves left when the search stopped
        depth_hit (bool): True when some branch reached the depth bound
    """
    frontier: int
    depth_hit: bool

    @property
    def proved(self):
        return False


@dataclass(frozen=True)
class _Expansion:
    rule: Rule
    principal: Principal
    premises: tuple


def _extend(formulas, additions):
    """Append the additions that are not already present"""
    result = list(formulas)
    for formula in additions:
        if formula not in result:
            result.append(formula)
    return tuple(result)


class SequentProver:
    """Backward search for polarized sequent calculus modulo

    Classical search keeps principal formulas and applies a rule only when
    every premise gains a formula, so every rule is invertible and no
    backtracking is needed. Intuitionistic search keeps at most one formula
    on the right, commits to invertible rules and backtracks over the others
    with a branch-local loop check.
    """

    def __init__(self, system, config=None):
        """Constructor.

        Args:
            system (PolarizedRewriteSystem): Rules
            config (SearchConfig): Search and rewriting bounds
        """
        self.system = system
        self.config = config or SearchConfig()
        self._chains = {}

    def chain(self, formula, polarity):
        """Head reducts within the rewriting depth bound"""
        key = (formula, polarity)
        if key not in self._chains:
            reducts = head_reducts(formula, polarity, self.system)
            self._chains[key] = tuple(reducts[:self.config.rewrite_depth + 1])
        return self._chains[key]

    def shape(self, formula, polarity):
        """The head reduct with a connective at its root, if any"""
        last = self.chain(formula, polarity)[-1]
        return last if isinstance(last, (And, Or, Implies)) else None

    def prove(self, sequent):
        """Search for a derivation of a sequent

        Args:
            sequent (Sequent): Goal sequent

        Returns:
            Proved or Exhausted: Search result
        """
        if self.config.intuitionistic:
            if len(sequent.right) > 1:
                log_message('Intuitionistic search needs at most one formula on the right',
                            logging.WARNING)
                return Exhausted(1, False)
            derivation, frontier, depth_hit = self._intuitionistic(
                sequent.left, sequent.right, 0, frozenset())
        else:
            derivation, frontier, depth_hit = self._classical(sequent.left, sequent.right, 0)
        if derivation is not None:
            log_message(f'Proved {sequent} with {derivation.size()} rule applications',
                        logging.INFO)
            return Proved(derivation)
        log_message(f'Search for {sequent} exhausted (frontier {frontier}, '
                    f'depth hit: {depth_hit})', logging.INFO)
        return Exhausted(frontier, depth_hit)

    # -- closing rules ------------------------------------------------------

    def _close(self, left, right):
        sequent = Sequent(left, right)
        for i, hypothesis in enumerate(left):
            below = self.chain(hypothesis, NEGATIVE)
            for j, conclusion in enumerate(right):
                for reduct in self.chain(conclusion, POSITIVE):
                    if reduct in below:
                        return Derivation(Rule.AXIOM, sequent,
                                          Principal('left', i, reduct, partner=j))
        for i, hypothesis in enumerate(left):
            if FALSUM in self.chain(hypothesis, NEGATIVE):
                return Derivation(Rule.BOT_L, sequent, Principal('left', i, FALSUM))
        return None

    # -- expansions ---------------------------------------------------------

    def _expansions(self, left, right, rules):
        """Applicable logical rules in rule order, then position order"""
        for rule in rules:
            connective, side = LOGICAL_RULES[rule]
            formulas = left if side == 'left' else right
            polarity = NEGATIVE if side == 'left' else POSITIVE
            for index, formula in enumerate(formulas):
                reduct = self.shape(formula, polarity)
                if not isinstance(reduct, connective):
                    continue
                premises = self._premises(rule, reduct, left, right)
                if premises is not None:
                    yield _Expansion(rule, Principal(side, index, reduct), premises)

    def _premises(self, rule, reduct, left, right):
        first, second = reduct.lhs, reduct.rhs
        single = self.config.intuitionistic
        if rule is Rule.AND_L:
            if first in left and second in left:
                return None
            return ((_extend(left, (first, second)), right),)
        if rule is Rule.OR_L:
            if first in left or second in left:
                return None
            return ((_extend(left, (first,)), right), (_extend(left, (second,)), right))
        if rule is Rule.IMP_L:
            if second in left or (first,) == tuple(right) or (not single and first in right):
                return None
            return ((left, (first,) if single else _extend(right, (first,))),
                    (_extend(left, (second,)), right))
        if rule is Rule.IMP_R:
            if first in left and second in right:
                return None
            return ((_extend(left, (first,)), (second,) if single else _extend(right, (second,))),)
        if rule is Rule.AND_R:
            if first in right or second in right:
                return None
            if single:
                return ((left, (first,)), (left, (second,)))
            return ((left, _extend(right, (first,))), (left, _extend(right, (second,))))
        if rule is Rule.OR_R:
            if first in right and second in right:
                return None
            return ((left, _extend(right, (first, second))),)
        raise ValueError(f'Not a logical rule: {rule}')

    def _cut_atoms(self, left, right):
        names = set(self.system.atoms())
        for formula in left + right:
            names |= atoms(formula)
        for name in sorted(names):
            atom = Atom(name)
            if atom not in left and atom not in right:
                yield atom

    def _cut(self, atom, left, right, single):
        premises = ((_extend(left, (atom,)), right),
                    (left, (atom,) if single else _extend(right, (atom,))))
        return _Expansion(Rule.CUT, Principal('cut', formula=atom, reducts=(atom, atom)),
                          premises)

    # -- classical search ---------------------------------------------------

    def _classical(self, left, right, depth):
        closed = self._close(left, right)
        if closed is not None:
            return closed, 0, False
        if depth >= self.config.depth:
            return None, 1, True
        order = (Rule.AND_L, Rule.OR_R, Rule.IMP_R, Rule.AND_R, Rule.OR_L, Rule.IMP_L)
        expansion = next(self._expansions(left, right, order), None)
        if expansion is None and self.config.allow_cut:
            atom = next(self._cut_atoms(left, right), None)
            if atom is not None:
                expansion = self._cut(atom, left, right, False)
        if expansion is None:
            return None, 1, False
        return self._derive(expansion, left, right, depth, self._classical)

    def _derive(self, expansion, left, right, depth, search, *extra):
        premises = []
        for premise_left, premise_right in expansion.premises:
            derivation, frontier, depth_hit = search(premise_left, premise_right,
                                                     depth + 1, *extra)
            if derivation is None:
                return None, frontier, depth_hit
            premises.append(derivation)
        return (Derivation(expansion.rule, Sequent(left, right), expansion.principal,
                           tuple(premises)), 0, False)

    # -- intuitionistic search ----------------------------------------------

    def _intuitionistic(self, left, right, depth, history):
        closed = self._close(left, right)
        if closed is not None:
            return closed, 0, False
        if depth >= self.config.depth:
            return None, 1, True
        key = (frozenset(left), tuple(right))
        if key in history:
            return None, 1, False
        history = history | {key}
        invertible = (Rule.AND_L, Rule.IMP_R, Rule.AND_R, Rule.OR_L)
        expansion = next(self._expansions(left, right, invertible), None)
        if expansion is not None:
            return self._derive(expansion, left, right, depth, self._intuitionistic, history)
        alternatives = list(self._or_right_choices(left, right))
        alternatives.extend(self._expansions(left, right, (Rule.IMP_L,)))
        if self.config.allow_cut:
            alternatives.extend(self._cut(atom, left, right, True)
                                for atom in self._cut_atoms(left, right))
        frontier, depth_hit = 0, False
        for alternative in alternatives:
            derivation, open_leaves, hit = self._derive(
                alternative, left, right, depth, self._intuitionistic, history)
            if derivation is not None:
                return derivation, 0, False
            frontier += open_leaves
            depth_hit = depth_hit or hit
        return None, max(frontier, 1), depth_hit

    def _or_right_choices(self, left, right):
        for index, formula in enumerate(right):
            reduct = self.shape(formula, POSITIVE)
            if not isinstance(reduct, Or):
                continue
            for chosen in (reduct.lhs, reduct.rhs):
                if (chosen,) != tuple(right):
                    yield _Expansion(Rule.OR_R, Principal('right', index, reduct),
                                     ((left, (chosen,)),))


def derivation_to_text(derivation):
    return derivation.format_text() + '\n'


def prove(sequent, system, config=None):
    """Backward proof search; see SequentProver"""
    return SequentProver(system, config).prove(sequent)


# -- derivation checking ----------------------------------------------------

@dataclass(frozen=True)
class DerivationVerdict:
    ok: bool
    path: tuple = ()
    reason: str = ''

    def format_path(self):
        return '/'.join(str(step) for step in self.path) or '<root>'


class _Invalid(Exception):
    def __init__(self, reason):
        super(_Invalid, self).__init__(reason)
        self.reason = reason


class DerivationChecker:
    """Independent re-validation of derivations

    Each node must match its rule schema: the recorded reducts must belong
    to the bounded closures of the principal formulas, and each premise side
    must be contained in the side the schema prescribes. Containment instead
    of equality admits implicit weakening and contraction.
    """

    def __init__(self, system, config=None):
        self.system = system
        self.config = config or SearchConfig()
        self._closures = {}

    def reach(self, formula, polarity):
        key = (formula, polarity)
        if key not in self._closures:
            self._closures[key] = explore(formula, polarity, self.system,
                                          self.config.bounds).formulas
        return self._closures[key]

    def check(self, derivation):
        """Validate every node, conclusion first

        Returns:
            DerivationVerdict: ok, or the path of premise indices to the first invalid node
        """
        stack = [(derivation, ())]
        while stack:
            node, path = stack.pop()
            try:
                self._check_node(node)
            except _Invalid as e:
                log_message(f'Derivation node {"/".join(map(str, path)) or "<root>"} '
                            f'rejected: {e.reason}', logging.DEBUG)
                return DerivationVerdict(False, path, e.reason)
            for index in reversed(range(len(node.premises))):
                stack.append((node.premises[index], path + (index,)))
        return DerivationVerdict(True)

    def _formula_at(self, formulas, index, side):
        if index is None or not 0 <= index < len(formulas):
            raise _Invalid(f'principal index {index} out of range on the {side}')
        return formulas[index]

    def _require(self, reduct, formula, polarity, shape=None):
        if reduct is None:
            raise _Invalid('missing reduct')
        if shape is not None and not isinstance(reduct, shape):
            raise _Invalid(f'reduct {format_formula(reduct)} is not a {shape.__name__}')
        if reduct not in self.reach(formula, polarity):
            raise _Invalid(f'{format_formula(formula)} does not rewrite '
                           f'{polarity.arrow} to {format_formula(reduct)}')

    def _check_node(self, node):
        rule = node.rule
        left, right = node.conclusion.left, node.conclusion.right
        principal = node.principal
        if self.config.intuitionistic and len(right) > 1:
            raise _Invalid('more than one formula on the right')
        if len(node.premises) != ARITY[rule]:
            raise _Invalid(f'{rule.value} needs {ARITY[rule]} premises, '
                           f'got {len(node.premises)}')
        if rule is Rule.AXIOM:
            hypothesis = self._formula_at(left, principal.index, 'left')
            conclusion = self._formula_at(right, principal.partner, 'right')
            self._require(principal.reduct, hypothesis, NEGATIVE)
            self._require(principal.reduct, conclusion, POSITIVE)
            return
        if rule is Rule.BOT_L:
            hypothesis = self._formula_at(left, principal.index, 'left')
            if principal.reduct != FALSUM:
                raise _Invalid('BotL witness must be false')
            self._require(FALSUM, hypothesis, NEGATIVE)
            return
        allowed = self._schema(rule, principal, left, right)
        for premise, (allowed_left, allowed_right) in zip(node.premises, allowed):
            if self.config.intuitionistic and len(premise.conclusion.right) > 1:
                raise _Invalid('premise has more than one formula on the right')
            if not set(premise.conclusion.left) <= set(allowed_left) or \
                    not set(premise.conclusion.right) <= set(allowed_right):
                raise _Invalid(f'premise {premise.conclusion} does not match the '
                               f'{rule.value} schema')

    def _schema(self, rule, principal, left, right):
        """Allowed premise sides for a non-leaf rule"""
        if rule in LOGICAL_RULES:
            shape, side = LOGICAL_RULES[rule]
            if principal.side != side:
                raise _Invalid(f'{rule.value} principal must be on the {side}')
            formulas = left if side == 'left' else right
            formula = self._formula_at(formulas, principal.index, side)
            self._require(principal.reduct, formula, NEGATIVE if side == 'left' else POSITIVE,
                          shape)
            first, second = principal.reduct.lhs, principal.reduct.rhs
            return {
                Rule.AND_L: [(left + (first, second), right)],
                Rule.OR_L: [(left + (first,), right), (left + (second,), right)],
                Rule.IMP_L: [(left, right + (first,)), (left + (second,), right)],
                Rule.IMP_R: [(left + (first,), right + (second,))],
                Rule.AND_R: [(left, right + (first,)), (left, right + (second,))],
                Rule.OR_R: [(left, right + (first, second))],
            }[rule]
        if rule is Rule.CUT:
            if principal.formula is None or len(principal.reducts) != 2:
                raise _Invalid('Cut needs a cut formula and two reducts')
            negative, positive = principal.reducts
            self._require(negative, principal.formula, NEGATIVE)
            self._require(positive, principal.formula, POSITIVE)
            return [(left + (negative,), right), (left, right + (positive,))]
        if rule in (Rule.CONTR_L, Rule.CONTR_R):
            side = 'left' if rule is Rule.CONTR_L else 'right'
            formula = self._formula_at(left if side == 'left' else right, principal.index, side)
            if len(principal.reducts) != 2:
                raise _Invalid(f'{rule.value} needs two reducts')
            polarity = NEGATIVE if side == 'left' else POSITIVE
            for reduct in principal.reducts:
                self._require(reduct, formula, polarity)
            if side == 'left':
                return [(left + tuple(principal.reducts), right)]
            return [(left, right + tuple(principal.reducts))]
        if rule in (Rule.WEAK_L, Rule.WEAK_R):
            side = 'left' if rule is Rule.WEAK_L else 'right'
            self._formula_at(left if side == 'left' else right, principal.index, side)
            return [(left, right)]
        raise _Invalid(f'unknown rule {rule}')


def check_derivation(derivation, system, config=None):
    """Re-validate a derivation; see DerivationChecker"""
    return DerivationChecker(system, config).check(derivation)
