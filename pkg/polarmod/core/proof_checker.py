"""
Proof-term checking for polarized natural deduction modulo
"""
import itertools
import logging
from dataclasses import dataclass

from .errors import Inconclusive
from .formula import FALSUM, And, Implies, Or, format_formula
from .proof_terms import App, Case, ExFalso, Fst, Inl, Inr, Lam, Pair, Snd, Var
from .rewrite_system import NEGATIVE, POSITIVE, explore
from .settings import CheckConfig
from ..utils.log_helpers import log_message


@dataclass(frozen=True)
class Context:
    """Ordered hypotheses; lookup takes the rightmost binding of a name"""
    bindings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'bindings', tuple((str(name), formula)
                                                   for name, formula in self.bindings))

    def lookup(self, name):
        for bound, formula in reversed(self.bindings):
            if bound == name:
                return formula
        return None

    def extend(self, name, formula):
        return Context(self.bindings + ((name, formula),))

    def __iter__(self):
        return iter(self.bindings)

    def __len__(self):
        return len(self.bindings)


@dataclass(frozen=True)
class CheckVerdict:
    """Outcome of a proof check

    Attributes:
        ok (bool): True when the term proves the goal
        path (tuple): Labels leading to the first failing subterm
        reason (str): Violated side condition
    """
    ok: bool
    path: tuple = ()
    reason: str = ''

    def format_path(self):
        return '/'.join(self.path) or '<root>'


@dataclass(frozen=True)
class _Failure:
    path: tuple
    reason: str


def _first(failures, path, reason):
    """Deepest recorded failure, or a failure at `path`"""
    return failures[0] if failures else _Failure(path, reason)


class ProofChecker:
    """Bidirectional checker of annotated proof terms modulo a rewrite system

    Check mode verifies a term against a goal; synthesis mode computes the
    candidate formulas a term proves. Every rewriting side condition is
    decided by a bounded closure; closures are cached per checker.
    """

    def __init__(self, system, config=None):
        """Constructor.

        Args:
            system (PolarizedRewriteSystem): Rules used modulo
            config (CheckConfig): Rewriting bounds
        """
        self.system = system
        self.config = config or CheckConfig()
        self._closures = {}
        self.truncated = False

    def reach(self, formula, polarity):
        key = (formula, polarity)
        if key not in self._closures:
            self._closures[key] = explore(formula, polarity, self.system, self.config.bounds)
        result = self._closures[key]
        if not result.complete:
            self.truncated = True
        return result.formulas

    def joinable(self, left, right):
        down = self.reach(left, NEGATIVE)
        return any(formula in down for formula in self.reach(right, POSITIVE))

    def check(self, context, term, goal):
        """Check that `term` proves `goal` under `context`

        Args:
            context (Context): Hypotheses
            term (ProofTerm): Proof term
            goal (Formula): Formula to prove

        Returns:
            CheckVerdict: ok, or the path and reason of the first failure

        Raises:
            Inconclusive: When the check failed and a closure was truncated
        """
        if not isinstance(context, Context):
            context = Context(tuple(context))
        self.truncated = False
        failure = self._check(context, term, goal, ())
        if failure is None:
            log_message(f'Proof checked against {format_formula(goal)}', logging.DEBUG)
            return CheckVerdict(True)
        if self.truncated:
            raise Inconclusive(f'Proof check at {"/".join(failure.path) or "<root>"} '
                               f'hit the rewriting bounds: {failure.reason}')
        return CheckVerdict(False, failure.path, failure.reason)

    # -- check mode ---------------------------------------------------------

    def _check(self, context, term, goal, path):
        if isinstance(term, Var):
            hypothesis = context.lookup(term.name)
            if hypothesis is None:
                return _Failure(path, f'unbound variable {term.name}')
            if self.joinable(hypothesis, goal):
                return None
            return _Failure(path, f'hypothesis {format_formula(hypothesis)} does not join '
                                  f'goal {format_formula(goal)}')
        if isinstance(term, Lam):
            return self._check_lam(context, term, goal, path)
        if isinstance(term, Pair):
            failures = []
            for reduct in self.reach(goal, POSITIVE):
                if not isinstance(reduct, And):
                    continue
                failure = (self._check(context, term.first, reduct.lhs, path + ('first',))
                           or self._check(context, term.second, reduct.rhs, path + ('second',)))
                if failure is None:
                    return None
                failures.append(failure)
            return _first(failures, path,
                          f'goal {format_formula(goal)} has no positive reduct A /\\ B')
        if isinstance(term, (Inl, Inr)):
            return self._check_injection(context, term, goal, path)
        if isinstance(term, Case):
            return self._check_case(context, term, goal, path)
        if isinstance(term, ExFalso):
            if not self.joinable(term.ann, goal):
                return _Failure(path, f'annotation {format_formula(term.ann)} does not join '
                                      f'goal {format_formula(goal)}')
            return self._check_absurd(context, term, path)
        # App, Fst, Snd: synthesize, then join with the goal
        candidates, failure = self._synth(context, term, path)
        if any(self.joinable(candidate, goal) for candidate in candidates):
            return None
        if failure is not None and not candidates:
            return failure
        proved = ', '.join(format_formula(candidate) for candidate in candidates)
        return _Failure(path, f'proved formulas [{proved}] do not join goal {format_formula(goal)}')

    def _check_lam(self, context, term, goal, path):
        failures = []
        hypotheses = self.reach(term.ann, POSITIVE)
        inner = context.extend(term.var, term.ann)
        for reduct in self.reach(goal, POSITIVE):
            if not isinstance(reduct, Implies) or reduct.lhs not in hypotheses:
                continue
            failure = self._check(inner, term.body, reduct.rhs, path + ('body',))
            if failure is None:
                return None
            failures.append(failure)
        return _first(failures, path, f'goal {format_formula(goal)} has no positive reduct '
                                      f'{format_formula(term.ann)} -> B')

    def _check_injection(self, context, term, goal, path):
        if not isinstance(term.ann, Or):
            return _Failure(path, f'injection annotation {format_formula(term.ann)} '
                                  f'is not a disjunction')
        failures = []
        below = self.reach(term.ann, NEGATIVE)
        for reduct in self.reach(goal, POSITIVE):
            if not isinstance(reduct, Or) or reduct not in below:
                continue
            side = reduct.lhs if isinstance(term, Inl) else reduct.rhs
            failure = self._check(context, term.body, side, path + ('body',))
            if failure is None:
                return None
            failures.append(failure)
        return _first(failures, path, f'annotation {format_formula(term.ann)} does not join '
                                      f'goal {format_formula(goal)}')

    def _check_case(self, context, term, goal, path):
        scrutinees, failure = self._synth(context, term.scrutinee, path + ('scrutinee',))
        if not scrutinees:
            return failure
        wanted = Or(term.left_ann, term.right_ann)
        failures = []
        for formula in scrutinees:
            if wanted not in self.reach(formula, NEGATIVE):
                continue
            failure = (self._check(context.extend(term.left_var, term.left_ann),
                                   term.left_body, goal, path + ('left',))
                       or self._check(context.extend(term.right_var, term.right_ann),
                                      term.right_body, goal, path + ('right',)))
            if failure is None:
                return None
            failures.append(failure)
        return _first(failures, path + ('scrutinee',),
                      f'scrutinee has no negative reduct {format_formula(wanted)}')

    def _check_absurd(self, context, term, path):
        candidates, failure = self._synth(context, term.body, path + ('body',))
        if any(FALSUM in self.reach(candidate, NEGATIVE) for candidate in candidates):
            return None
        if failure is not None and not candidates:
            return failure
        return _Failure(path + ('body',), 'body does not rewrite negatively to false')

    # -- synthesis mode -----------------------------------------------------

    def _synth(self, context, term, path):
        """Candidate formulas proved by `term`, in discovery order

        Returns:
            tuple: (list of formulas, failure or None when the list is non-empty)
        """
        candidates, failure = self._synth_raw(context, term, path)
        unique = []
        for candidate in candidates:
            if candidate not in unique:
                unique.append(candidate)
        return unique, (None if unique else failure)

    def _synth_raw(self, context, term, path):
        if isinstance(term, Var):
            hypothesis = context.lookup(term.name)
            if hypothesis is None:
                return [], _Failure(path, f'unbound variable {term.name}')
            return [hypothesis], None
        if isinstance(term, Lam):
            bodies, failure = self._synth(context.extend(term.var, term.ann), term.body,
                                          path + ('body',))
            return [Implies(term.ann, body) for body in bodies], failure
        if isinstance(term, App):
            return self._synth_app(context, term, path)
        if isinstance(term, Pair):
            firsts, failure = self._synth(context, term.first, path + ('first',))
            if not firsts:
                return [], failure
            seconds, failure = self._synth(context, term.second, path + ('second',))
            return [And(first, second)
                    for first, second in itertools.product(firsts, seconds)], failure
        if isinstance(term, (Fst, Snd)):
            bodies, failure = self._synth(context, term.body, path + ('body',))
            found = []
            for body in bodies:
                for reduct in self.reach(body, NEGATIVE):
                    if isinstance(reduct, And):
                        found.append(reduct.lhs if isinstance(term, Fst) else reduct.rhs)
            if not found and failure is None:
                failure = _Failure(path, 'body has no negative reduct A /\\ B')
            return found, failure
        if isinstance(term, (Inl, Inr)):
            if not isinstance(term.ann, Or):
                return [], _Failure(path, f'injection annotation {format_formula(term.ann)} '
                                          f'is not a disjunction')
            side = term.ann.lhs if isinstance(term, Inl) else term.ann.rhs
            failure = self._check(context, term.body, side, path + ('body',))
            return ([term.ann], None) if failure is None else ([], failure)
        if isinstance(term, Case):
            return self._synth_case(context, term, path)
        if isinstance(term, ExFalso):
            failure = self._check_absurd(context, term, path)
            return ([term.ann], None) if failure is None else ([], failure)
        raise TypeError(f'Not a proof term: {term!r}')

    def _synth_app(self, context, term, path):
        functions, failure = self._synth(context, term.fun, path + ('fun',))
        found = []
        failures = [failure] if failure else []
        for function in functions:
            for reduct in self.reach(function, NEGATIVE):
                if not isinstance(reduct, Implies):
                    continue
                failure = self._check(context, term.arg, reduct.lhs, path + ('arg',))
                if failure is None:
                    found.append(reduct.rhs)
                else:
                    failures.append(failure)
        return found, _first(failures, path, 'function has no negative reduct A -> B')

    def _synth_case(self, context, term, path):
        scrutinees, failure = self._synth(context, term.scrutinee, path + ('scrutinee',))
        wanted = Or(term.left_ann, term.right_ann)
        if not any(wanted in self.reach(formula, NEGATIVE) for formula in scrutinees):
            return [], failure or _Failure(path + ('scrutinee',), f'scrutinee has no negative '
                                                                  f'reduct {format_formula(wanted)}')
        lefts, failure = self._synth(context.extend(term.left_var, term.left_ann),
                                     term.left_body, path + ('left',))
        found = []
        right_context = context.extend(term.right_var, term.right_ann)
        for candidate in lefts:
            if self._check(right_context, term.right_body, candidate, path + ('right',)) is None:
                found.append(candidate)
        if lefts and not found:
            failure = _Failure(path + ('right',), 'right branch proves none of the left results')
        return found, failure


def check_proof(context, term, goal, system, config=None):
    """Check a proof term against a goal modulo a polarized rewrite system

    Args:
        context (Context or iterable): (name, formula) hypotheses
        term (ProofTerm): Proof term
        goal (Formula): Formula to prove
        system (PolarizedRewriteSystem): Rules
        config (CheckConfig): Rewriting bounds

    Returns:
        CheckVerdict: Verdict with failure path and reason
    """
    return ProofChecker(system, config).check(context, term, goal)
