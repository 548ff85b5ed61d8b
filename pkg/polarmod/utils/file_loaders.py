"""
Loaders for theory, rules, proof and derivation files
"""
import logging
from dataclasses import dataclass
from pathlib import Path

from ..core.errors import FormatError, InputError
from ..core.formula import parse_theory
from ..core.rewrite_system import parse_rules
from .log_helpers import log_message
from .serialization import (context_from_json, derivation_from_json, formula_from_json,
                            loads, term_from_json, valuation_from_json)


@dataclass(frozen=True)
class ProofDocument:
    """A proof term with optional context and goal"""
    term: object
    context: object = None
    goal: object = None


class DocumentLoader:
    """Read input files and decode them into library objects"""

    def __init__(self, encoding='utf-8'):
        """Constructor.

        Args:
            encoding (str): Text encoding of every input file
        """
        self.encoding = encoding

    def read_text(self, path):
        """Read a file as text

        Args:
            path (str or Path): File to read

        Returns:
            str: File contents

        Raises:
            InputError: When the file cannot be read or decoded
        """
        try:
            return Path(path).read_text(encoding=self.encoding)
        except (OSError, UnicodeDecodeError) as e:
            log_message(f'Cannot read {path}: {e}', logging.ERROR)
            raise InputError(f'Cannot read {path}: {e}') from None

    def load_theory(self, path):
        theory = parse_theory(self.read_text(path))
        log_message(f'Loaded {len(theory.axioms)} axioms from {path}', logging.DEBUG)
        return theory

    def load_rules(self, path):
        system = parse_rules(self.read_text(path))
        log_message(f'Loaded {len(system)} rules from {path}', logging.DEBUG)
        return system

    def load_json(self, path):
        return loads(self.read_text(path))

    def load_valuation(self, path):
        return valuation_from_json(self.load_json(path))

    def load_derivation(self, path):
        return derivation_from_json(self.load_json(path))

    def load_proof(self, path):
        """Read a proof file

        The file holds either a bare proof term or an object with a "proof"
        term and optional "context" and "goal" fields.

        Returns:
            ProofDocument: Decoded term, context and goal
        """
        document = self.load_json(path)
        if isinstance(document, dict) and 'proof' in document:
            unknown = set(document) - {'proof', 'context', 'goal'}
            if unknown:
                raise FormatError(f'Unknown proof file fields: {", ".join(sorted(unknown))}')
            context = document.get('context')
            goal = document.get('goal')
            return ProofDocument(
                term_from_json(document['proof']),
                None if context is None else context_from_json(context),
                None if goal is None else formula_from_json(goal))
        return ProofDocument(term_from_json(document))
