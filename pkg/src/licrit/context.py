"""Working-precision configuration and the adaptive escalation driver."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, TypeVar, Union

from mpmath.libmp import from_str, fzero, mpf_cmp, to_str

from .ball import BallComplex, BallReal
from .errors import PrecisionExhausted

Ball = Union[BallReal, BallComplex]
T = TypeVar("T", BallReal, BallComplex)

DEFAULT_BITS = 256
DEFAULT_MAX_BITS = 32768
DEFAULT_TARGET = "1e-30"


def _to_raw_radius(value) -> tuple:
    if isinstance(value, tuple):
        return value
    if isinstance(value, (int, float)):
        value = repr(value)
    return from_str(value, 64, "c")


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus the escalation target and cap.

    ``target_radius`` is stored as a raw mpf upper bound; ``certify``
    doubles ``working_bits`` until an enclosure meets it.
    """

    working_bits: int = DEFAULT_BITS
    target_radius: tuple = from_str(DEFAULT_TARGET, 64, "c")
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        object.__setattr__(self, "target_radius", _to_raw_radius(self.target_radius))
        if self.working_bits < 64:
            raise ValueError("working_bits must be at least 64")
        if self.max_bits < self.working_bits:
            raise ValueError("max_bits must be at least working_bits")
        if self.target_radius[0] == 1:
            raise ValueError("target_radius must be nonnegative")

    @classmethod
    def make(cls, working_bits: int = DEFAULT_BITS, target_radius=DEFAULT_TARGET,
             max_bits: int = DEFAULT_MAX_BITS) -> "PrecisionContext":
        return cls(working_bits, _to_raw_radius(target_radius), max_bits)

    def with_bits(self, bits: int) -> "PrecisionContext":
        return replace(self, working_bits=bits)

    def with_target(self, target) -> "PrecisionContext":
        return replace(self, target_radius=_to_raw_radius(target))

    def describe_target(self) -> str:
        return to_str(self.target_radius, 5)


def _result_rad(value: Ball):
    if isinstance(value, BallComplex):
        return value.rad_max()
    return value.rad


def certify(
    computation: Callable[[PrecisionContext], T],
    ctx: PrecisionContext,
    extra_ok: Callable[[T], bool] | None = None,
) -> T:
    """Re-run ``computation`` with doubled precision until it is tight enough.

    Convergence means the result radius is at most ``ctx.target_radius`` and,
    when given, ``extra_ok(result)`` holds.  The tightest result obtained is
    attached to :class:`PrecisionExhausted` when the bit cap is hit first.
    """

    bits = ctx.working_bits
    best = None
    best_rad = None
    while True:
        result = computation(ctx.with_bits(bits))
        rad = _result_rad(result)
        if best is None or mpf_cmp(rad, best_rad) < 0:
            best, best_rad = result, rad
        converged = mpf_cmp(rad, ctx.target_radius) <= 0 or (
            ctx.target_radius == fzero and rad == fzero
        )
        if converged and (extra_ok is None or extra_ok(result)):
            return result
        if bits >= ctx.max_bits:
            raise PrecisionExhausted(
                f"radius {to_str(best_rad, 5)} above target "
                f"{ctx.describe_target()} at {bits} bits",
                result=best,
                bits=bits,
            )
        bits = min(2 * bits, ctx.max_bits)
