"""Exception types shared across the package."""

from __future__ import annotations


class LicritError(Exception):
    """Base class for all package-specific errors."""


class DivisionByZeroBall(LicritError):
    """Divisor enclosure contains zero."""


class DomainErrorBall(LicritError):
    """Input enclosure violates the domain of the requested function."""


class PoleError(LicritError):
    """Input enclosure intersects a pole of the requested function."""


class NearZeroError(LicritError):
    """A denominator enclosure could not be certified away from zero."""


class BracketError(LicritError):
    """Endpoint signs do not certifiably bracket a zero."""


class FormatError(LicritError):
    """Malformed zero-table input."""


class ValidationError(LicritError):
    """A parsed zero failed its sign-change validation."""


class OrderError(LicritError):
    """A series was requested beyond its computed order."""


class RadiusError(LicritError):
    """A contour radius violates its analyticity constraint."""


class PrecisionExhausted(LicritError):
    """Escalation hit the bit cap before reaching the target radius.

    The tightest enclosure obtained is attached as ``result`` so callers
    that can tolerate a loose answer may still use it.
    """

    def __init__(self, message: str, result=None, bits: int | None = None):
        super().__init__(message)
        self.result = result
        self.bits = bits
