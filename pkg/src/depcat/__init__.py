"""A kernel for Martin-Löf type theory with 1, Pi and Sigma, and its categorical models."""

from . import bridge, checker, cwf, finset, interpreter, parser, signature, syntax, termmodel
from .checker import Checker, Derivable, NotDerivable, Unknown
from .parser import parse_expr, parse_file
from .signature import validate_signature

__all__ = [
    "bridge",
    "checker",
    "cwf",
    "finset",
    "interpreter",
    "parser",
    "signature",
    "syntax",
    "termmodel",
    "Checker",
    "Derivable",
    "NotDerivable",
    "Unknown",
    "parse_expr",
    "parse_file",
    "validate_signature",
]

__version__ = "0.1.0"
