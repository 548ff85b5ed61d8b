"""
Command-line interface for Polarized Modulo
"""
import argparse
import io
import logging
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .core.errors import InputError, PolarModError, exit_code_for
from .core.formula import format_formula, format_theory, parse_formula
from .core.oracle import countermodel
from .core.proof_checker import ProofChecker
from .core.proof_terms import format_term, normalize
from .core.rewrite_system import (check_disjoint, classical_variant, format_rules, light_dneg,
                                  rules_to_axioms)
from .core.sequent_prover import (DerivationChecker, SequentProver, derivation_to_text,
                                  parse_sequent)
from .core.settings import DEFAULT_SETTINGS, CheckConfig, SearchConfig
from .core.theory_compiler import compile_theory, report_to_json, report_to_text
from .utils.file_loaders import DocumentLoader
from .utils.log_helpers import configure_logging, log_message
from .utils.serialization import derivation_to_json, dumps, formula_to_json, term_to_json


LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    stdout: str = ''
    stderr: str = ''


class UsageError(Exception):
    """Raised instead of exiting when the command line is malformed"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f'{self.prog}: error: {message}')


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {text!r}') from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {text!r}')
    return value


def _add_bounds(parser):
    parser.add_argument('--rewrite-depth', type=positive_int,
                        default=DEFAULT_SETTINGS['rewrite_depth'],
                        help='rewriting depth bound for side conditions')
    parser.add_argument('--cap', type=positive_int, default=DEFAULT_SETTINGS['rewrite_cap'],
                        help='maximum size of a reachable set')


def build_parser():
    """Argument parser with one subcommand per operation"""
    parser = _Parser(prog='polarmod',
                     description='Polarized deduction modulo for propositional theories')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--json', action='store_true', help='machine-readable output')
    parser.add_argument('--log-level', choices=LOG_LEVELS, default='WARNING',
                        help='diagnostics written to stderr')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=_Parser)
    commands.required = True

    compile_cmd = commands.add_parser('compile', help='present a theory as a rewrite system')
    compile_cmd.add_argument('theory', help='theory file, one axiom per line')
    compile_cmd.add_argument('-o', '--output', help='write the rules file here')
    compile_cmd.add_argument('--report', choices=('json', 'text'),
                             help='print the compile report instead of the rules')
    compile_cmd.add_argument('--seed-valuation', metavar='FILE',
                             help='JSON object of preferred atom values')
    compile_cmd.add_argument('--clause-limit', type=positive_int,
                             default=DEFAULT_SETTINGS['clause_limit'])

    analyze_cmd = commands.add_parser('analyze', help='disjointness and commutation of a system')
    analyze_cmd.add_argument('rules')

    prove_cmd = commands.add_parser('prove', help='backward proof search')
    prove_cmd.add_argument('rules')
    prove_cmd.add_argument('sequent', help='sequent text, e.g. "A, B |- C"')
    prove_cmd.add_argument('--depth', type=positive_int, default=DEFAULT_SETTINGS['search_depth'])
    prove_cmd.add_argument('--intuitionistic', action='store_true')
    prove_cmd.add_argument('--allow-cut', action='store_true', help='permit atomic cuts')
    prove_cmd.add_argument('--emit-derivation', metavar='FILE',
                           help='write the derivation as JSON')
    _add_bounds(prove_cmd)

    derivation_cmd = commands.add_parser('check-derivation', help='re-validate a derivation')
    derivation_cmd.add_argument('rules')
    derivation_cmd.add_argument('derivation')
    derivation_cmd.add_argument('--intuitionistic', action='store_true')
    _add_bounds(derivation_cmd)

    proof_cmd = commands.add_parser('check-proof', help='check a proof term against a goal')
    proof_cmd.add_argument('rules')
    proof_cmd.add_argument('proof', help='JSON file with "context" and "proof"')
    proof_cmd.add_argument('goal', help='goal formula')
    _add_bounds(proof_cmd)

    normalize_cmd = commands.add_parser('normalize', help='reduce a proof term to normal form')
    normalize_cmd.add_argument('rules')
    normalize_cmd.add_argument('proof')
    normalize_cmd.add_argument('--ultra', action='store_true')
    normalize_cmd.add_argument('--budget', type=positive_int,
                               default=DEFAULT_SETTINGS['normalize_budget'])
    _add_bounds(normalize_cmd)

    translate_cmd = commands.add_parser('translate', help='print the axioms of a system')
    translate_cmd.add_argument('rules')

    oracle_cmd = commands.add_parser('oracle', help='truth-table provability')
    oracle_cmd.add_argument('rules')
    oracle_cmd.add_argument('sequent')
    oracle_cmd.add_argument('--atom-limit', type=positive_int,
                            default=DEFAULT_SETTINGS['atom_limit'])

    dneg_cmd = commands.add_parser('dneg', help='light double negation')
    dneg_cmd.add_argument('formula', nargs='?')
    dneg_cmd.add_argument('--rules', metavar='FILE',
                          help='print the classical variant of a rules file')
    return parser


class CommandRunner:
    """Run one parsed command; each handler returns (exit code, stdout text)"""

    def __init__(self, args, loader=None):
        """Constructor.

        Args:
            args (argparse.Namespace): Parsed command line
            loader (DocumentLoader): File reader
        """
        self.args = args
        self.loader = loader or DocumentLoader()

    def run(self):
        handler = getattr(self, 'cmd_' + self.args.command.replace('-', '_'))
        return handler()

    def _write(self, path, text):
        try:
            Path(path).write_text(text, encoding='utf-8')
        except OSError as e:
            raise InputError(f'Cannot write {path}: {e}') from None
        log_message(f'Wrote {path}', logging.INFO)

    def _search_config(self):
        return SearchConfig(depth=getattr(self.args, 'depth', DEFAULT_SETTINGS['search_depth']),
                            rewrite_depth=self.args.rewrite_depth, cap=self.args.cap,
                            intuitionistic=self.args.intuitionistic,
                            allow_cut=getattr(self.args, 'allow_cut', False))

    # -- commands -----------------------------------------------------------

    def cmd_compile(self):
        theory = self.loader.load_theory(self.args.theory)
        seed = None
        if self.args.seed_valuation:
            seed = self.loader.load_valuation(self.args.seed_valuation)
        report = compile_theory(theory, seed=seed, clause_limit=self.args.clause_limit)
        rules_text = format_rules(report.system)
        if self.args.output:
            self._write(self.args.output, rules_text)
        if self.args.report == 'json' or self.args.json:
            return 0, report_to_json(report)
        if self.args.report == 'text':
            return 0, report_to_text(report)
        return 0, '' if self.args.output else rules_text

    def cmd_analyze(self):
        system = self.loader.load_rules(self.args.rules)
        report = check_disjoint(system)
        code = 0 if report.disjoint else 1
        if self.args.json:
            return code, dumps({**report.to_dict(), 'commute': report.commute})
        lines = [
            f'disjoint: {"yes" if report.disjoint else "no"}',
            f'commute: {"yes" if report.commute else "unknown"}',
            f'negative rules: {report.rule_count_neg}',
            f'positive rules: {report.rule_count_pos}',
        ]
        if report.clashes:
            lines.append(f'clashes: {", ".join(report.clashes)}')
        return code, '\n'.join(lines) + '\n'

    def cmd_prove(self):
        system = self.loader.load_rules(self.args.rules)
        sequent = parse_sequent(self.args.sequent)
        result = SequentProver(system, self._search_config()).prove(sequent)
        if result.proved:
            if self.args.emit_derivation:
                self._write(self.args.emit_derivation, dumps(derivation_to_json(result.derivation)))
            if self.args.json:
                return 0, dumps({'result': 'proved',
                                 'derivation': derivation_to_json(result.derivation)})
            return 0, 'proved\n' + derivation_to_text(result.derivation)
        code = 3 if result.depth_hit else 1
        if self.args.json:
            return code, dumps({'result': 'exhausted', 'frontier': result.frontier,
                                'depth_hit': result.depth_hit})
        suffix = ', depth bound reached' if result.depth_hit else ''
        return code, f'exhausted (frontier {result.frontier}{suffix})\n'

    def cmd_check_derivation(self):
        system = self.loader.load_rules(self.args.rules)
        derivation = self.loader.load_derivation(self.args.derivation)
        verdict = DerivationChecker(system, self._search_config()).check(derivation)
        return self._verdict(verdict, [str(step) for step in verdict.path])

    def cmd_check_proof(self):
        system = self.loader.load_rules(self.args.rules)
        document = self.loader.load_proof(self.args.proof)
        goal = parse_formula(self.args.goal)
        checker = ProofChecker(system, CheckConfig(self.args.rewrite_depth, self.args.cap))
        verdict = checker.check(document.context or (), document.term, goal)
        return self._verdict(verdict, list(verdict.path))

    def _verdict(self, verdict, path):
        if self.args.json:
            return (0 if verdict.ok else 1,
                    dumps({'ok': verdict.ok, 'path': path, 'reason': verdict.reason}))
        if verdict.ok:
            return 0, 'ok\n'
        return 1, f'invalid at {verdict.format_path()}: {verdict.reason}\n'

    def cmd_normalize(self):
        system = self.loader.load_rules(self.args.rules)
        document = self.loader.load_proof(self.args.proof)
        result = normalize(document.term, ultra=self.args.ultra, budget=self.args.budget)
        log_message(f'Normalized in {result.steps} steps', logging.INFO)
        code, recheck = 0, None
        if document.context is not None and document.goal is not None:
            checker = ProofChecker(system, CheckConfig(self.args.rewrite_depth, self.args.cap))
            recheck = checker.check(document.context, result.normal, document.goal)
            code = 0 if recheck.ok else 1
        if self.args.json:
            payload = {'normal': term_to_json(result.normal), 'steps': result.steps}
            if recheck is not None:
                payload['checks'] = recheck.ok
            return code, dumps(payload)
        lines = [format_term(result.normal), f'steps: {result.steps}']
        if recheck is not None:
            lines.append('checks: ok' if recheck.ok else
                         f'checks: invalid at {recheck.format_path()}: {recheck.reason}')
        return code, '\n'.join(lines) + '\n'

    def cmd_translate(self):
        axioms = rules_to_axioms(self.loader.load_rules(self.args.rules))
        if self.args.json:
            return 0, dumps({'axioms': [formula_to_json(axiom) for axiom in axioms.axioms]})
        return 0, format_theory(axioms)

    def cmd_oracle(self):
        system = self.loader.load_rules(self.args.rules)
        sequent = parse_sequent(self.args.sequent)
        row = countermodel(sequent, system, self.args.atom_limit)
        code = 0 if row is None else 1
        if self.args.json:
            return code, dumps({'provable': row is None, 'countermodel': row})
        return code, 'provable\n' if row is None else 'unprovable\n'

    def cmd_dneg(self):
        if self.args.rules:
            system = classical_variant(self.loader.load_rules(self.args.rules))
            return 0, format_rules(system)
        if self.args.formula is None:
            raise UsageError('polarmod dneg: error: give a formula or --rules FILE')
        result = light_dneg(parse_formula(self.args.formula))
        if self.args.json:
            return 0, dumps({'formula': formula_to_json(result)})
        return 0, format_formula(result) + '\n'


def run(argv):
    """Run the command line in-process

    Args:
        argv (list): Arguments without the program name

    Returns:
        CommandOutcome: Exit code and captured output
    """
    parser = build_parser()
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return CommandOutcome(e.code if isinstance(e.code, int) else 0, out.getvalue(),
                              err.getvalue())
    except UsageError as e:
        return CommandOutcome(2, '', f'{e}\n')
    configure_logging(args.log_level, stream=err)
    try:
        code, payload = CommandRunner(args).run()
    except UsageError as e:
        return CommandOutcome(2, '', err.getvalue() + f'{e}\n')
    except PolarModError as e:
        log_message(str(e), logging.ERROR)
        return CommandOutcome(exit_code_for(e), '', err.getvalue() + f'error: {e}\n')
    return CommandOutcome(code, payload, err.getvalue())


def main(argv=None):
    outcome = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(outcome.stdout)
    sys.stderr.write(outcome.stderr)
    return outcome.exit_code
