"""Exception hierarchy shared by every module in the package."""


class FuzzySeqError(Exception):
    """Base class for all package errors."""


class SpreadMismatch(FuzzySeqError, ValueError):
    """Two operands belong to different (t1, t2) spread families."""


class DegenerateSpread(FuzzySeqError, ValueError):
    """Membership or alpha-cut requested for a one-sided zero spread."""


class DivisionByFuzzyZero(FuzzySeqError, ZeroDivisionError):
    """Divisor has a zero center."""


class DomainError(FuzzySeqError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class GeneratorError(FuzzySeqError, RuntimeError):
    """A sequence or matrix generator failed to evaluate a term."""


class UnknownClass(FuzzySeqError, KeyError):
    """Requested matrix class is not in the implemented table."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""
