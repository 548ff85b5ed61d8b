"""
Exception hierarchy for Polarized Modulo
"""


class PolarModError(Exception):
    """Base class for every error raised by the library"""


class InputError(PolarModError):
    """Malformed user input (exit code 2)"""


class ResourceLimitError(PolarModError):
    """A configured bound stopped the computation (exit code 3)"""


class SemanticError(PolarModError):
    """Well-formed input with no answer of the requested kind (exit code 1)"""


class ParseError(InputError):
    """Formula, theory or rules text could not be parsed"""

    def __init__(self, message, offset=0, expected=''):
        """Constructor.

        Args:
            message (str): Human readable description
            offset (int): Byte offset of the failure in the UTF-8 input
            expected (str): Hint naming the expected token
        """
        super(ParseError, self).__init__(f'{message} (at byte {offset})')
        self.offset = offset
        self.expected = expected


class RuleSystemError(InputError):
    """A rewrite system violates the one-rule-per-atom-and-polarity contract"""


class FormatError(InputError):
    """A JSON, sequent or valuation document has the wrong shape"""


class SizeLimit(ResourceLimitError):
    """Clausal form grew beyond the configured clause bound"""

    def __init__(self, limit):
        super(SizeLimit, self).__init__(f'clausal form exceeds {limit} clauses')
        self.limit = limit


class CapExceeded(ResourceLimitError):
    """A reachability search produced more formulas than its cap allows"""

    def __init__(self, partial, cap):
        super(CapExceeded, self).__init__(f'reachable set exceeds cap {cap}')
        self.partial = partial
        self.cap = cap


class Inconclusive(ResourceLimitError):
    """A bounded search ended without a witness and without exhausting its space"""


class BudgetExhausted(ResourceLimitError):
    """Normalization ran out of steps"""

    def __init__(self, term, budget):
        super(BudgetExhausted, self).__init__(f'no normal form within {budget} steps')
        self.term = term
        self.budget = budget


class TooManyAtoms(ResourceLimitError):
    """Exhaustive truth-table check requested over too many atoms"""

    def __init__(self, count, limit):
        super(TooManyAtoms, self).__init__(
            f'{count} atoms exceed the exhaustive bound of {limit}')
        self.count = count
        self.limit = limit


class MissingAtom(SemanticError):
    """A valuation is not total on the atoms of a formula"""

    def __init__(self, name):
        super(MissingAtom, self).__init__(f'valuation has no value for atom {name}')
        self.name = name


class InconsistentTheory(SemanticError):
    """The theory has no model, so no polarized presentation exists"""


def exit_code_for(error):
    """Map an exception to the command-line exit code

    Args:
        error (Exception): Raised error

    Returns:
        int: 1, 2 or 3
    """
    if isinstance(error, ResourceLimitError):
        return 3
    if isinstance(error, InputError):
        return 2
    if isinstance(error, SemanticError):
        return 1
    return 2
