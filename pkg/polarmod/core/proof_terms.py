"""
Annotated proof terms, capture-avoiding substitution and proof reduction
"""
import logging
from dataclasses import dataclass, replace

from .errors import BudgetExhausted
from .formula import is_identifier
from .settings import DEFAULT_SETTINGS
from ..utils.log_helpers import log_message


class ProofTerm:
    """Base class of proof terms. Instances are immutable."""

    # Names of the subterm fields, in leftmost-outermost traversal order
    children = ()

    def __str__(self):
        return format_term(self)


def _check_name(name):
    if not is_identifier(name):
        raise ValueError(f'Invalid variable name: {name!r}')


@dataclass(frozen=True)
class Var(ProofTerm):
    name: str

    def __post_init__(self):
        _check_name(self.name)


@dataclass(frozen=True)
class Lam(ProofTerm):
    """Implication introduction; `ann` is the bound hypothesis"""
    var: str
    ann: object
    body: ProofTerm

    children = ('body',)

    def __post_init__(self):
        _check_name(self.var)


@dataclass(frozen=True)
class App(ProofTerm):
    fun: ProofTerm
    arg: ProofTerm

    children = ('fun', 'arg')


@dataclass(frozen=True)
class Pair(ProofTerm):
    first: ProofTerm
    second: ProofTerm

    children = ('first', 'second')


@dataclass(frozen=True)
class Fst(ProofTerm):
    body: ProofTerm

    children = ('body',)


@dataclass(frozen=True)
class Snd(ProofTerm):
    body: ProofTerm

    children = ('body',)


@dataclass(frozen=True)
class Inl(ProofTerm):
    """Left injection; `ann` is the whole disjunction concluded"""
    ann: object
    body: ProofTerm

    children = ('body',)


@dataclass(frozen=True)
class Inr(ProofTerm):
    """Right injection; `ann` is the whole disjunction concluded"""
    ann: object
    body: ProofTerm

    children = ('body',)


@dataclass(frozen=True)
class Case(ProofTerm):
    """Disjunction elimination with one hypothesis per branch"""
    scrutinee: ProofTerm
    left_var: str
    left_ann: object
    left_body: ProofTerm
    right_var: str
    right_ann: object
    right_body: ProofTerm

    children = ('scrutinee', 'left_body', 'right_body')

    def __post_init__(self):
        _check_name(self.left_var)
        _check_name(self.right_var)


@dataclass(frozen=True)
class ExFalso(ProofTerm):
    """Falsity elimination; `ann` is the formula concluded"""
    ann: object
    body: ProofTerm

    children = ('body',)


def replace_child(term, name, value):
    """Copy of `term` with one subterm field replaced"""
    return replace(term, **{name: value})


# -- inspection -------------------------------------------------------------

def free_vars(term):
    """Set of free proof variables"""
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Lam):
        return free_vars(term.body) - {term.var}
    if isinstance(term, Case):
        return (free_vars(term.scrutinee)
                | (free_vars(term.left_body) - {term.left_var})
                | (free_vars(term.right_body) - {term.right_var}))
    found = set()
    for name in term.children:
        found |= free_vars(getattr(term, name))
    return found


def size(term):
    """Number of term constructors"""
    return 1 + sum(size(getattr(term, name)) for name in term.children)


def format_term(term):
    """Compact textual rendering used in logs and text reports"""
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Lam):
        return f'(\\{term.var}:{term.ann}. {format_term(term.body)})'
    if isinstance(term, App):
        return f'({format_term(term.fun)} {format_term(term.arg)})'
    if isinstance(term, Pair):
        return f'<{format_term(term.first)}, {format_term(term.second)}>'
    if isinstance(term, Fst):
        return f'fst({format_term(term.body)})'
    if isinstance(term, Snd):
        return f'snd({format_term(term.body)})'
    if isinstance(term, Inl):
        return f'inl[{term.ann}]({format_term(term.body)})'
    if isinstance(term, Inr):
        return f'inr[{term.ann}]({format_term(term.body)})'
    if isinstance(term, Case):
        return (f'case({format_term(term.scrutinee)}, '
                f'{term.left_var}:{term.left_ann}. {format_term(term.left_body)}, '
                f'{term.right_var}:{term.right_ann}. {format_term(term.right_body)})')
    if isinstance(term, ExFalso):
        return f'exfalso[{term.ann}]({format_term(term.body)})'
    raise TypeError(f'Not a proof term: {term!r}')


# -- substitution -----------------------------------------------------------

def _fresh(name, avoid):
    candidate = name
    while candidate in avoid:
        candidate += "'"
    return candidate


def _under_binder(binder, body, var, replacement, replacement_free):
    """Substitute below a binder, renaming it when it would capture"""
    if binder == var:
        return binder, body
    if binder in replacement_free and var in free_vars(body):
        renamed = _fresh(binder, replacement_free | free_vars(body) | {var})
        body = substitute(body, binder, Var(renamed))
        binder = renamed
    return binder, substitute(body, var, replacement)


def substitute(term, var, replacement):
    """Capture-avoiding substitution [replacement/var]term

    Bound variables that would capture a free variable of the replacement
    are renamed by appending primes until the name is unused.

    Args:
        term (ProofTerm): Term to substitute into
        var (str): Variable to replace
        replacement (ProofTerm): Substituted term

    Returns:
        ProofTerm: Result of the substitution
    """
    return _substitute(term, var, replacement, free_vars(replacement))


def _substitute(term, var, replacement, replacement_free):
    if isinstance(term, Var):
        return replacement if term.name == var else term
    if isinstance(term, Lam):
        binder, body = _under_binder(term.var, term.body, var, replacement, replacement_free)
        return Lam(binder, term.ann, body)
    if isinstance(term, Case):
        left_var, left_body = _under_binder(
            term.left_var, term.left_body, var, replacement, replacement_free)
        right_var, right_body = _under_binder(
            term.right_var, term.right_body, var, replacement, replacement_free)
        return Case(_substitute(term.scrutinee, var, replacement, replacement_free),
                    left_var, term.left_ann, left_body,
                    right_var, term.right_ann, right_body)
    result = term
    for name in term.children:
        result = replace_child(
            result, name, _substitute(getattr(term, name), var, replacement, replacement_free))
    return result


# -- reduction --------------------------------------------------------------

def contract(term):
    """Contract a redex at the root, or return None"""
    if isinstance(term, App) and isinstance(term.fun, Lam):
        return substitute(term.fun.body, term.fun.var, term.arg)
    if isinstance(term, Fst) and isinstance(term.body, Pair):
        return term.body.first
    if isinstance(term, Snd) and isinstance(term.body, Pair):
        return term.body.second
    if isinstance(term, Case):
        if isinstance(term.scrutinee, Inl):
            return substitute(term.left_body, term.left_var, term.scrutinee.body)
        if isinstance(term.scrutinee, Inr):
            return substitute(term.right_body, term.right_var, term.scrutinee.body)
    return None


def reduce_step(term, ultra=False):
    """Contract the leftmost-outermost redex

    With `ultra`, a disjunction elimination whose scrutinee is not an
    injection also contracts, to its left branch.

    Args:
        term (ProofTerm): Term to reduce
        ultra (bool): Enable the ultra-reduction rules

    Returns:
        ProofTerm or None: The reduct, None when the term is normal
    """
    reduct = contract(term)
    if reduct is not None:
        return reduct
    if ultra and isinstance(term, Case):
        return term.left_body
    for name in term.children:
        child = reduce_step(getattr(term, name), ultra)
        if child is not None:
            return replace_child(term, name, child)
    return None


def has_redex(term, ultra=False):
    return reduce_step(term, ultra) is not None


def all_reducts(term, ultra=False):
    """Every one-step reduct at every position, both ultra branches included"""
    found = []
    reduct = contract(term)
    if reduct is not None:
        found.append(reduct)
    if ultra and isinstance(term, Case):
        found.extend([term.left_body, term.right_body])
    for name in term.children:
        for child in all_reducts(getattr(term, name), ultra):
            found.append(replace_child(term, name, child))
    unique = []
    for item in found:
        if item not in unique:
            unique.append(item)
    return unique


@dataclass(frozen=True)
class NormalizationResult:
    normal: ProofTerm
    steps: int


def reduction_sequence(term, ultra=False, budget=None):
    """Terms visited by leftmost-outermost reduction, the start included"""
    budget = DEFAULT_SETTINGS['normalize_budget'] if budget is None else budget
    sequence = [term]
    current = term
    for _ in range(budget):
        current = reduce_step(current, ultra)
        if current is None:
            break
        sequence.append(current)
    return sequence


def normalize(term, ultra=False, budget=None):
    """Reduce to normal form with the leftmost-outermost strategy

    Args:
        term (ProofTerm): Start term
        ultra (bool): Enable the ultra-reduction rules
        budget (int): Maximum number of steps

    Returns:
        NormalizationResult: Normal form and number of steps

    Raises:
        ValueError: When the budget is not positive
        BudgetExhausted: When the budget runs out before a normal form
    """
    budget = DEFAULT_SETTINGS['normalize_budget'] if budget is None else budget
    if budget <= 0:
        raise ValueError(f'Normalization budget must be positive, got {budget}')
    current = term
    for steps in range(budget + 1):
        reduct = reduce_step(current, ultra)
        if reduct is None:
            log_message(f'Normal form reached in {steps} steps', logging.DEBUG)
            return NormalizationResult(current, steps)
        if steps == budget:
            break
        current = reduct
    log_message(f'Normalization budget of {budget} steps exhausted', logging.WARNING)
    raise BudgetExhausted(current, budget)


def ultra_reducts(term):
    """One-step reducts with both ultra branches available at every case node"""
    return all_reducts(term, ultra=True)
