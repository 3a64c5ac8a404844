"""Exception hierarchy; every class carries the CLI exit code it maps to."""

from __future__ import annotations


class SurrealError(Exception):
    exit_code = 1
    code = "error"


class ParseError(SurrealError):
    exit_code = 2
    code = "parse"

    def __init__(self, message: str, position: int, expected: frozenset[str] = frozenset()):
        self.position = position
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at column {position}{detail}")


class UnsupportedError(SurrealError):
    exit_code = 3
    code = "unsupported"


class UnsupportedExponent(UnsupportedError):
    code = "unsupported_exponent"


class CoefficientNotRepresentable(UnsupportedError):
    code = "coefficient_not_representable"


class DomainError(SurrealError):
    exit_code = 4
    code = "domain"


class GapViolation(DomainError):
    code = "gap_violation"


class DivisionByZero(DomainError, ZeroDivisionError):
    code = "division_by_zero"


class NotInfinitesimal(DomainError):
    code = "not_infinitesimal"


class NotPositive(DomainError):
    code = "not_positive"


class NotInfinite(DomainError):
    code = "not_infinite"


class NotPurelyInfinite(DomainError):
    code = "not_purely_infinite"


class NotDyadic(DomainError):
    code = "not_dyadic"


class ZeroArgument(DomainError):
    code = "zero_argument"


class NoPath(DomainError):
    code = "no_path"


class PrecisionLoss(DomainError):
    """A truncated intermediate is too coarse to determine the next step."""

    code = "precision_loss"


class DepthExceeded(SurrealError):
    exit_code = 5
    code = "depth_exceeded"


class OrdinalOverflow(DepthExceeded):
    code = "ordinal_overflow"
