"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class QMockError(Exception):
    """Base class. ``span`` is an optional (start, end) byte range in source text."""

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.message} (at offset {self.span[0]})"


class UsageError(QMockError):
    """Bad arguments: conductor mismatch, inadmissible level, wrong parity..."""


class RingError(UsageError):
    pass


class DivisionByZero(QMockError):
    pass


class NotInvertible(DivisionByZero):
    """A series that is zero up to its known truncation was inverted."""


class InsufficientPrecision(QMockError):
    pass


class AmbiguousSubstitution(QMockError):
    """q -> c*q^M with c != 1 applied to a series with fractional exponents."""


class BranchError(QMockError):
    """A half-integer power of a coefficient has no representative in Q, Q(i), Q(w)."""


class PoleError(QMockError):
    """Non-generic parameters: a defining sum hits a pole."""


class DivergenceError(QMockError):
    pass


class IntegralityError(QMockError):
    """A normalized string function left Z[[q]]."""


class ParseError(QMockError):
    def __init__(self, message: str, offset: int, expected: frozenset[str] | None = None):
        super().__init__(message, (offset, offset))
        self.offset = offset
        self.expected = expected or frozenset()
