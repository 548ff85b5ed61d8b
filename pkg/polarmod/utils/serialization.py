"""
JSON codecs for formulas, proof terms, contexts, derivations and valuations
"""
import json

from ..core.errors import FormatError
from ..core.formula import format_formula, parse_formula
from ..core.proof_checker import Context
from ..core.proof_terms import App, Case, ExFalso, Fst, Inl, Inr, Lam, Pair, Snd, Var
from ..core.semantics import Valuation
from ..core.sequent_prover import Derivation, Principal, Rule, Sequent


def dumps(document):
    """Deterministic JSON text with a trailing newline"""
    return json.dumps(document, indent=2, ensure_ascii=False) + '\n'


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f'Invalid JSON at line {e.lineno} column {e.colno}: {e.msg}') from None


# -- formulas ---------------------------------------------------------------

def formula_to_json(formula):
    return format_formula(formula)


def formula_from_json(value):
    if not isinstance(value, str):
        raise FormatError(f'Formula must be a string, got {value!r}')
    return parse_formula(value)


# -- proof terms ------------------------------------------------------------

def term_to_json(term):
    """Encode a proof term in the tagged-object JSON shape"""
    if isinstance(term, Var):
        return {'var': term.name}
    if isinstance(term, Lam):
        return {'lam': {'var': term.var, 'ann': formula_to_json(term.ann),
                        'body': term_to_json(term.body)}}
    if isinstance(term, App):
        return {'app': [term_to_json(term.fun), term_to_json(term.arg)]}
    if isinstance(term, Pair):
        return {'pair': [term_to_json(term.first), term_to_json(term.second)]}
    if isinstance(term, Fst):
        return {'fst': term_to_json(term.body)}
    if isinstance(term, Snd):
        return {'snd': term_to_json(term.body)}
    if isinstance(term, (Inl, Inr, ExFalso)):
        tag = {Inl: 'inl', Inr: 'inr', ExFalso: 'exfalso'}[type(term)]
        return {tag: {'ann': formula_to_json(term.ann), 'body': term_to_json(term.body)}}
    if isinstance(term, Case):
        return {'case': {
            'scrut': term_to_json(term.scrutinee),
            'left': {'var': term.left_var, 'ann': formula_to_json(term.left_ann),
                     'body': term_to_json(term.left_body)},
            'right': {'var': term.right_var, 'ann': formula_to_json(term.right_ann),
                      'body': term_to_json(term.right_body)},
        }}
    raise TypeError(f'Not a proof term: {term!r}')


def _field(mapping, key, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise FormatError(f'{where} needs a "{key}" field')
    return mapping[key]


def _pair(value, where):
    if not isinstance(value, list) or len(value) != 2:
        raise FormatError(f'{where} needs a list of two terms')
    return term_from_json(value[0]), term_from_json(value[1])


def _name(value, where):
    if not isinstance(value, str):
        raise FormatError(f'{where} variable must be a string, got {value!r}')
    return value


def _binder(value, where):
    return (_name(_field(value, 'var', where), where),
            formula_from_json(_field(value, 'ann', where)),
            term_from_json(_field(value, 'body', where)))


def term_from_json(value):
    """Decode a proof term

    Raises:
        FormatError: Unknown tag or missing field
        ParseError: Malformed annotation formula
    """
    if not isinstance(value, dict) or len(value) != 1:
        raise FormatError(f'Proof term must be an object with one tag, got {value!r}')
    tag, body = next(iter(value.items()))
    try:
        if tag == 'var':
            return Var(_name(body, 'var'))
        if tag == 'lam':
            return Lam(*_binder(body, 'lam'))
        if tag == 'app':
            return App(*_pair(body, 'app'))
        if tag == 'pair':
            return Pair(*_pair(body, 'pair'))
        if tag == 'fst':
            return Fst(term_from_json(body))
        if tag == 'snd':
            return Snd(term_from_json(body))
        if tag in ('inl', 'inr', 'exfalso'):
            constructor = {'inl': Inl, 'inr': Inr, 'exfalso': ExFalso}[tag]
            return constructor(formula_from_json(_field(body, 'ann', tag)),
                               term_from_json(_field(body, 'body', tag)))
        if tag == 'case':
            left = _binder(_field(body, 'left', 'case'), 'case.left')
            right = _binder(_field(body, 'right', 'case'), 'case.right')
            return Case(term_from_json(_field(body, 'scrut', 'case')), *left, *right)
    except ValueError as e:
        raise FormatError(str(e)) from None
    raise FormatError(f'Unknown proof term tag "{tag}"')


# -- contexts and valuations ------------------------------------------------

def context_to_json(context):
    return [{'var': name, 'formula': formula_to_json(formula)} for name, formula in context]


def context_from_json(value):
    if not isinstance(value, list):
        raise FormatError('Context must be a list of {"var", "formula"} objects')
    return Context(tuple((_name(_field(item, 'var', 'context'), 'context'),
                          formula_from_json(_field(item, 'formula', 'context')))
                         for item in value))


def valuation_from_json(value):
    """Decode {"P": 1, "Q": 0}; booleans are accepted"""
    if not isinstance(value, dict):
        raise FormatError('Valuation must be an object mapping atoms to 0 or 1')
    for name, bit in value.items():
        if bit not in (0, 1):
            raise FormatError(f'Value of {name} must be 0 or 1, got {bit!r}')
    return Valuation(value)


# -- sequents and derivations -----------------------------------------------

def sequent_to_json(sequent):
    return {'left': [formula_to_json(formula) for formula in sequent.left],
            'right': [formula_to_json(formula) for formula in sequent.right]}


def sequent_from_json(value):
    left = _field(value, 'left', 'conclusion')
    right = _field(value, 'right', 'conclusion')
    if not isinstance(left, list) or not isinstance(right, list):
        raise FormatError('Sequent sides must be lists of formulas')
    return Sequent(tuple(formula_from_json(item) for item in left),
                   tuple(formula_from_json(item) for item in right))


def principal_to_json(principal):
    document = {'side': principal.side, 'index': principal.index,
                'reduct': None if principal.reduct is None else formula_to_json(principal.reduct)}
    if principal.partner is not None:
        document['partner'] = principal.partner
    if principal.formula is not None:
        document['formula'] = formula_to_json(principal.formula)
    if principal.reducts:
        document['reducts'] = [formula_to_json(reduct) for reduct in principal.reducts]
    return document


def principal_from_json(value):
    if value is None:
        return Principal()
    if not isinstance(value, dict):
        raise FormatError('Principal must be an object')

    def optional_formula(key):
        return None if value.get(key) is None else formula_from_json(value[key])

    for key in ('index', 'partner'):
        if value.get(key) is not None and not isinstance(value[key], int):
            raise FormatError(f'Principal {key} must be an integer')
    return Principal(side=value.get('side'), index=value.get('index'),
                     reduct=optional_formula('reduct'), partner=value.get('partner'),
                     formula=optional_formula('formula'),
                     reducts=tuple(formula_from_json(item) for item in value.get('reducts', ())))


def derivation_to_json(derivation):
    return {
        'rule': derivation.rule.value,
        'conclusion': sequent_to_json(derivation.conclusion),
        'principal': principal_to_json(derivation.principal),
        'premises': [derivation_to_json(premise) for premise in derivation.premises],
    }


def derivation_from_json(value):
    """Decode a derivation tree

    Raises:
        FormatError: Unknown rule or malformed node
    """
    name = _field(value, 'rule', 'derivation')
    try:
        rule = Rule(name)
    except ValueError:
        raise FormatError(f'Unknown rule "{name}"') from None
    premises = value.get('premises', [])
    if not isinstance(premises, list):
        raise FormatError('Derivation premises must be a list')
    return Derivation(rule, sequent_from_json(_field(value, 'conclusion', 'derivation')),
                      principal_from_json(value.get('principal')),
                      tuple(derivation_from_json(premise) for premise in premises))
