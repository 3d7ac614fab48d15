"""Triangular fuzzy number sequences, the omega/gamma matrix domains and their duals."""

from .domains import DomainSpace, domain_norm, in_domain, phi, psi
from .errors import (
    DegenerateSpread,
    DivisionByFuzzyZero,
    DomainError,
    FuzzySeqError,
    GeneratorError,
    SpreadMismatch,
    UnknownClass,
)
from .fuzzy_core import CRISP, Interval, SpreadPair, TriangularFuzzyNumber
from .inf_matrix import InfiniteMatrix
from .seq_spaces import FuzzySequence
from .verdict import DEFAULT_POLICY, Status, TruncationPolicy, Verdict

__version__ = "0.1.0"

__all__ = [
    "CRISP",
    "DEFAULT_POLICY",
    "DegenerateSpread",
    "DivisionByFuzzyZero",
    "DomainError",
    "DomainSpace",
    "FuzzySeqError",
    "FuzzySequence",
    "GeneratorError",
    "InfiniteMatrix",
    "Interval",
    "SpreadMismatch",
    "SpreadPair",
    "Status",
    "TriangularFuzzyNumber",
    "TruncationPolicy",
    "UnknownClass",
    "Verdict",
    "domain_norm",
    "in_domain",
    "phi",
    "psi",
]
