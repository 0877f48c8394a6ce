"""Certified ball-arithmetic workbench for the Riemann xi function,
Li-coefficient positivity, and Gram-kernel determinant sign verdicts."""

__version__ = "0.1.0"

from .ball import BallComplex, BallReal, constant
from .context import PrecisionContext, certify
from .errors import (
    BracketError,
    DivisionByZeroBall,
    DomainErrorBall,
    FormatError,
    LicritError,
    NearZeroError,
    OrderError,
    PoleError,
    PrecisionExhausted,
    RadiusError,
    ValidationError,
)

__all__ = [
    "BallComplex",
    "BallReal",
    "PrecisionContext",
    "certify",
    "constant",
    "LicritError",
    "BracketError",
    "DivisionByZeroBall",
    "DomainErrorBall",
    "FormatError",
    "NearZeroError",
    "OrderError",
    "PoleError",
    "PrecisionExhausted",
    "RadiusError",
    "ValidationError",
]
