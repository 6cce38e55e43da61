"""Exact q-series arithmetic, theta and Appell functions, mock theta functions,
sl(2) string functions, and an identity verifier."""

from .errors import QMockError
from .evaluate import evaluate
from .expr import parse, to_text
from .ring import CycCoeff
from .series import QSeries
from .verify import load_registry, run_identity, run_suite

__version__ = "0.1.0"

__all__ = ["CycCoeff", "QMockError", "QSeries", "evaluate", "load_registry", "parse", "run_identity", "run_suite",
           "to_text", "__version__"]
