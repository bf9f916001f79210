"""Boolean query language: parsing, pretty-printing, evaluation."""

from .ast import And, FieldScope, Not, Or, Phrase, Refine, SetRef, Term, to_text
from .parser import ParseError, parse_query
from .evaluate import EvaluationError, evaluate, run_script, set_algebra

__all__ = [
    "And",
    "EvaluationError",
    "FieldScope",
    "Not",
    "Or",
    "ParseError",
    "Phrase",
    "Refine",
    "SetRef",
    "Term",
    "evaluate",
    "parse_query",
    "run_script",
    "set_algebra",
    "to_text",
]
