"""
Propositional formulas: representation, parsing and printing
"""
import re
from dataclasses import dataclass

import pyparsing as pp

from .errors import ParseError


pp.ParserElement.enable_packrat()

IDENTIFIER_PATTERN = r"[A-Za-z_][A-Za-z0-9_']*"
IDENTIFIER_RE = re.compile(IDENTIFIER_PATTERN + r'\Z')

FALSE_KEYWORD = 'false'
NOT_TOKEN = '~'
AND_TOKEN = '/\\'
OR_TOKEN = '\\/'
IMPLIES_TOKEN = '->'

# Printing precedence, loosest first
_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_NOT = 4
_PREC_ATOMIC = 5


def is_identifier(name):
    """Check an atom or variable name against the identifier grammar"""
    return isinstance(name, str) and bool(IDENTIFIER_RE.match(name)) and name != FALSE_KEYWORD


class Formula:
    """Base class of the formula tree. Instances are immutable."""

    def __str__(self):
        return format_formula(self)

    def atoms(self):
        return atoms(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not is_identifier(self.name):
            raise ValueError(f'Invalid atom name: {self.name!r}')


@dataclass(frozen=True)
class Falsum(Formula):
    """The absurd proposition"""


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


BINARY_CONNECTIVES = (Implies, And, Or)

FALSUM = Falsum()
# There is no truth constant; ~false stands for it
TOP = Implies(FALSUM, FALSUM)


@dataclass(frozen=True)
class Theory:
    """Ordered list of axioms"""
    axioms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'axioms', tuple(self.axioms))

    def atoms(self):
        found = set()
        for axiom in self.axioms:
            found |= atoms(axiom)
        return found

    def conjunction(self):
        return conjoin(self.axioms, empty=TOP)


def neg(formula):
    """Build ~formula, i.e. formula -> false"""
    return Implies(formula, FALSUM)


def is_negation(formula):
    return isinstance(formula, Implies) and formula.rhs == FALSUM


def conjoin(formulas, empty=TOP):
    """Left-associated conjunction of a sequence

    Args:
        formulas (iterable): Conjuncts in order
        empty (Formula): Value for an empty sequence

    Returns:
        Formula: The conjunction
    """
    result = None
    for formula in formulas:
        result = formula if result is None else And(result, formula)
    return empty if result is None else result


def disjoin(formulas, empty=FALSUM):
    """Left-associated disjunction of a sequence; empty gives false"""
    result = None
    for formula in formulas:
        result = formula if result is None else Or(result, formula)
    return empty if result is None else result


def atoms(formula):
    """Set of atom names occurring in a formula"""
    found = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            found.add(node.name)
        elif isinstance(node, BINARY_CONNECTIVES):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return found


def size(formula):
    """Number of nodes of the formula tree"""
    if isinstance(formula, BINARY_CONNECTIVES):
        return 1 + size(formula.lhs) + size(formula.rhs)
    return 1


def depth(formula):
    if isinstance(formula, BINARY_CONNECTIVES):
        return 1 + max(depth(formula.lhs), depth(formula.rhs))
    return 0


def ordering_key(formula):
    """Deterministic total order: size first, then printed form"""
    return (size(formula), format_formula(formula))


# -- printing ---------------------------------------------------------------

def _precedence(formula):
    if is_negation(formula):
        return _PREC_NOT
    if isinstance(formula, Implies):
        return _PREC_IMPLIES
    if isinstance(formula, Or):
        return _PREC_OR
    if isinstance(formula, And):
        return _PREC_AND
    return _PREC_ATOMIC


def _format(formula, required):
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, Falsum):
        return FALSE_KEYWORD
    if is_negation(formula):
        text = NOT_TOKEN + _format(formula.lhs, _PREC_NOT)
    elif isinstance(formula, Implies):
        text = f'{_format(formula.lhs, _PREC_OR)} {IMPLIES_TOKEN} {_format(formula.rhs, _PREC_IMPLIES)}'
    elif isinstance(formula, Or):
        text = f'{_format(formula.lhs, _PREC_OR)} {OR_TOKEN} {_format(formula.rhs, _PREC_AND)}'
    elif isinstance(formula, And):
        text = f'{_format(formula.lhs, _PREC_AND)} {AND_TOKEN} {_format(formula.rhs, _PREC_NOT)}'
    else:
        raise TypeError(f'Not a formula: {formula!r}')
    if _precedence(formula) < required:
        return f'({text})'
    return text


def format_formula(formula):
    """Print a formula with minimal parentheses

    Implications into false print as negations. The output parses back to the
    same tree.

    Args:
        formula (Formula): Formula to print

    Returns:
        str: ASCII rendering
    """
    return _format(formula, _PREC_IMPLIES)


# -- parsing ----------------------------------------------------------------

def _fold(constructor, right_assoc):
    def action(tokens):
        items = list(tokens[0])
        operands = items[::2]
        if right_assoc:
            result = operands[-1]
            for operand in reversed(operands[:-1]):
                result = constructor(operand, result)
        else:
            result = operands[0]
            for operand in operands[1:]:
                result = constructor(result, operand)
        return result
    return action


def _negate(tokens):
    items = list(tokens[0])
    result = items[-1]
    for _ in items[:-1]:
        result = neg(result)
    return result


def _build_grammar():
    falsum = pp.Keyword(FALSE_KEYWORD, ident_chars=pp.identbodychars + "'")
    falsum.set_parse_action(lambda: FALSUM)
    atom = pp.Regex(r"(?!false(?![A-Za-z0-9_']))" + IDENTIFIER_PATTERN)
    atom.set_parse_action(lambda tokens: Atom(tokens[0]))
    atom.set_name('atom')
    operand = falsum | atom
    expression = pp.infix_notation(operand, [
        (pp.Literal(NOT_TOKEN), 1, pp.OpAssoc.RIGHT, _negate),
        (pp.Literal(AND_TOKEN), 2, pp.OpAssoc.LEFT, _fold(And, False)),
        (pp.Literal(OR_TOKEN), 2, pp.OpAssoc.LEFT, _fold(Or, False)),
        (pp.Literal(IMPLIES_TOKEN), 2, pp.OpAssoc.RIGHT, _fold(Implies, True)),
    ])
    expression.set_name('formula')
    return expression


_GRAMMAR = _build_grammar()


def byte_offset(text, index):
    """Convert a character index into a UTF-8 byte offset"""
    return len(text[:index].encode('utf-8'))


def parse_formula(text):
    """Parse a formula

    Precedence is ~ over /\\ over \\/ over ->; -> associates to the right.

    Args:
        text (str): Formula text

    Returns:
        Formula: Parsed formula

    Raises:
        ParseError: On malformed input, with byte offset and expected token
    """
    try:
        return _GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        offset = byte_offset(text, e.loc)
        raise ParseError(f'Cannot parse formula {text!r}: {e.msg}', offset, e.msg) from None


def parse_theory(text):
    """Parse a theory file: one axiom per line, # comments, blank lines ignored

    Args:
        text (str): File contents

    Returns:
        Theory: Axioms in file order

    Raises:
        ParseError: Offsets are relative to the whole file
    """
    axioms = []
    position = 0
    for line in text.splitlines(keepends=True):
        content = line.split('#', 1)[0]
        if content.strip():
            try:
                axioms.append(parse_formula(content))
            except ParseError as e:
                absolute = byte_offset(text, position) + e.offset
                raise ParseError(f'Invalid axiom {content.strip()!r}: {e.expected}',
                                 absolute, e.expected) from None
        position += len(line)
    return Theory(tuple(axioms))


def format_theory(theory):
    """Render a theory as file text"""
    return ''.join(format_formula(axiom) + '\n' for axiom in theory.axioms)
