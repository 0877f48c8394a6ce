"""Zero tables: import with sign-change certification, scanning, refinement,
truncated products and truncated sums with disclosed tail bounds.

Tail bounds use the zero-counting model dN(T) = log(T / 2 pi) / (2 pi) dT
with a blanket safety factor of two, under the assumption that every zero
beyond the truncation height is real and at least that height.  Both the
model and the assumption are recorded on every TailBound.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable

from mpmath.libmp import (
    fone,
    from_int,
    from_man_exp,
    fzero,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pow_int,
    mpf_shift,
    to_float,
    to_str,
)

from .ball import RAD_PREC, BallComplex, BallReal
from .context import PrecisionContext
from .errors import BracketError, FormatError, ValidationError
from .xi import big_xi_pair_real, big_xi_real

__all__ = [
    "ZeroTable",
    "TailBound",
    "TAIL_MODEL_NOTE",
    "import_zeros",
    "refine_zero",
    "scan_zeros",
    "truncated_product",
    "zero_sum",
    "format_zero_table",
]

TAIL_MODEL_NOTE = (
    "tail model: zeros beyond the cutoff assumed real and above the cutoff "
    "height, density log(T/2pi)/(2pi) dT, safety factor 2"
)

_LINE_RE = re.compile(r"^\d+\.(\d+)$")


@dataclass(frozen=True)
class TailBound:
    """Upper bound for a discarded zero-sum tail under the disclosed model."""

    cutoff_index: int
    cutoff_height: BallReal
    bound_kind: str
    value: BallReal
    note: str = TAIL_MODEL_NOTE

    def raw(self):
        return self.value.mag_upper()


class ZeroTable:
    """Ordered certified enclosures of the positive-real-axis zeros of Xi."""

    __slots__ = ("zeros", "source", "_square_cache")

    def __init__(self, zeros: tuple, source: str):
        self.zeros = tuple(zeros)
        self.source = source
        self._square_cache = {}

    def __len__(self) -> int:
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def __getitem__(self, idx: int) -> BallReal:
        return self.zeros[idx]

    @property
    def count(self) -> int:
        return len(self.zeros)

    def squares(self, prec: int) -> tuple:
        try:
            return self._square_cache[prec]
        except KeyError:
            sq = tuple(z.sq(prec) for z in self.zeros)
            self._square_cache[prec] = sq
            return sq

    def head(self, count: int) -> "ZeroTable":
        return ZeroTable(self.zeros[:count], self.source)


def _certified_sign(z: BallReal, bits: int, max_bits: int):
    """Certified sign of Xi at a real point, escalating until it resolves."""
    while True:
        val = big_xi_real(z, bits).re
        sign = val.certified_sign()
        if sign is not None:
            return sign, bits
        if bits >= max_bits:
            return None, bits
        bits = min(2 * bits, max_bits)


def import_zeros(stream, ctx: PrecisionContext, validate: bool = True) -> ZeroTable:
    """Parse and certify a plain-text table of increasing zero ordinates.

    Each value v with d supplied decimals becomes the ball [v - 10^-d,
    v + 10^-d]; validation certifies a sign change of Xi across exactly
    that interval.
    """
    if isinstance(stream, str):
        lines: Iterable[str] = stream.splitlines()
    else:
        lines = stream
    entries = []
    prev = None
    for lineno, raw_line in enumerate(lines, start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        match = _LINE_RE.match(line)
        if not match:
            raise FormatError(f"line {lineno}: expected a positive decimal ordinate")
        value = Decimal(line)
        if prev is not None and value <= prev:
            raise FormatError(f"line {lineno}: ordinates must be strictly increasing")
        prev = value
        entries.append((lineno, line, len(match.group(1))))

    zeros = []
    for lineno, text, digits in entries:
        prec_parse = int(math.ceil(len(text) * 3.33)) + 16
        center = BallReal.from_str(text, prec_parse)
        eps = _pow10_raw(-digits)
        ball = BallReal(center.mid, mpf_add(eps, center.rad, RAD_PREC, "c"))
        if validate:
            bits = max(96, int(digits * 3.4) + 64)
            lo = BallReal(ball.lower())
            hi = BallReal(ball.upper())
            sign_lo, bits_lo = _certified_sign(lo, bits, ctx.max_bits)
            sign_hi, _ = _certified_sign(hi, max(bits, bits_lo), ctx.max_bits)
            if sign_lo is None or sign_hi is None:
                raise ValidationError(
                    f"line {lineno}: could not certify Xi signs at the bracket"
                )
            if sign_lo * sign_hi >= 0:
                raise ValidationError(
                    f"line {lineno}: no certified sign change across the bracket"
                )
        zeros.append(ball)
    return ZeroTable(tuple(zeros), source="imported")


def _pow10_raw(exponent: int):
    from mpmath.libmp import from_str

    return from_str(f"1e{exponent}", RAD_PREC, "c")


def refine_zero(bracket, ctx: PrecisionContext) -> BallReal:
    """Shrink a sign-change bracket to an enclosure of width target_radius.

    Bisection with off-center retreat when the probe straddles zero, plus
    interval-Newton contraction once the bracket is narrow.
    """
    lo_ball, hi_ball = bracket
    base_bits = max(ctx.working_bits, 96)
    lo = lo_ball.lower() if isinstance(lo_ball, BallReal) else lo_ball
    hi = hi_ball.upper() if isinstance(hi_ball, BallReal) else hi_ball
    sign_lo, _ = _certified_sign(BallReal(lo), base_bits, ctx.max_bits)
    sign_hi, _ = _certified_sign(BallReal(hi), base_bits, ctx.max_bits)
    if sign_lo is None or sign_hi is None or sign_lo * sign_hi >= 0:
        raise BracketError("endpoint signs do not certifiably bracket a zero")
    target = ctx.target_radius

    def width():
        return mpf_add(mpf_neg(lo), hi, RAD_PREC, "c")

    newton_scale = from_man_exp(1, -10)
    newton_below = None  # retry Newton only after the width halves again
    while mpf_cmp(width(), mpf_shift(target, 1)) > 0:
        w = width()
        if mpf_cmp(w, newton_scale) < 0 and (
            newton_below is None or mpf_cmp(w, newton_below) < 0
        ):
            contracted = _newton_step(lo, hi, base_bits, ctx)
            if contracted is not None:
                lo, hi = contracted
                continue
            newton_below = mpf_shift(w, -1)
        done = False
        for num, den in ((1, 2), (31, 64), (17, 32)):
            mid = mpf_add(
                lo,
                mpf_div(
                    mpf_mul(mpf_add(hi, mpf_neg(lo), base_bits + 8, "n"),
                            from_int(num), base_bits + 8, "n"),
                    from_int(den),
                    base_bits + 8,
                    "n",
                ),
                base_bits + 8,
                "n",
            )
            sign_mid, _ = _certified_sign(
                BallReal(mid), base_bits, min(ctx.max_bits, base_bits * 16)
            )
            if sign_mid is not None:
                if sign_mid == sign_lo:
                    lo = mid
                else:
                    hi = mid
                done = True
                break
        if not done:
            raise BracketError("could not certify a probe sign inside the bracket")
    return BallReal.from_endpoints(lo, hi, max(base_bits, 64))


def _newton_step(lo, hi, bits, ctx: PrecisionContext):
    """One interval-Newton contraction; None when it fails to shrink."""
    pg = bits + 16
    bracket = BallReal.from_endpoints(lo, hi, pg)
    mid = BallReal(bracket.mid)
    value = big_xi_pair_real(mid, pg)[0].re
    deriv = big_xi_pair_real(bracket, pg)[1].re
    if deriv.contains_zero():
        return None
    shift = value.div(deriv, pg)
    new = mid.sub(shift, pg)
    new_lo = new.lower()
    new_hi = new.upper()
    if mpf_cmp(new_lo, lo) < 0:
        new_lo = lo
    if mpf_cmp(new_hi, hi) > 0:
        new_hi = hi
    if mpf_cmp(new_lo, new_hi) >= 0:
        return None
    old_width = mpf_add(hi, mpf_mul(lo, from_int(-1), RAD_PREC, "c"), RAD_PREC, "c")
    new_width = mpf_add(new_hi, mpf_mul(new_lo, from_int(-1), RAD_PREC, "c"), RAD_PREC, "c")
    if mpf_cmp(new_width, mpf_shift(old_width, -1)) > 0:
        return None
    return new_lo, new_hi


def scan_zeros(t_max, step: float = 0.25, ctx: PrecisionContext | None = None) -> ZeroTable:
    """Grid scan of Xi on [0, t_max]; brackets and refines every certified
    sign change.  Not guaranteed complete; reporting layers disclose that."""
    ctx = ctx or PrecisionContext()
    t_hi = float(t_max) if not isinstance(t_max, BallReal) else to_float(t_max.upper())
    bits = max(ctx.working_bits, 96)
    count = int(math.floor(t_hi / step)) + 1
    grid = []
    signs = []
    for j in range(count + 1):
        t = min(j * step, t_hi)
        point = BallReal.from_float(t)
        sign, bits_used = _certified_sign(point, bits, ctx.max_bits)
        if sign is None:
            # landed improbably close to a zero: nudge the grid point
            point = BallReal.from_float(t + step * 1e-3)
            sign, _ = _certified_sign(point, bits, ctx.max_bits)
            if sign is None:
                raise BracketError(f"cannot certify Xi sign near t = {t}")
        grid.append(point)
        signs.append(sign)
        if t >= t_hi:
            break
    zeros = []
    for (a, sa), (b, sb) in zip(zip(grid, signs), zip(grid[1:], signs[1:])):
        if sa * sb < 0:
            zeros.append(refine_zero((a, b), ctx))
    return ZeroTable(tuple(zeros), source="computed")


def truncated_product(z: BallComplex, table: ZeroTable, prec: int = 192) -> BallComplex:
    """prod_{n<=N} (1 - z^2 / z_n^2); the unseen factors are a disclosed
    relative-error estimate, not part of the enclosure."""
    pg = prec + 8
    z_sq = z.mul(z, pg)
    one = BallComplex.from_int(1)
    total = one
    for zn_sq in table.squares(pg):
        total = total.mul(one.sub(z_sq.div_real(zn_sq, pg), pg), pg)
    return total


def product_tail_relative_estimate(z_abs: float, table: ZeroTable) -> float:
    """Float estimate of the missing |log| mass of the truncated product."""
    if not len(table):
        return float("inf")
    height = to_float(table[-1].mid)
    return z_abs * z_abs * math.log(height / (2 * math.pi)) / (math.pi * height)


def zero_sum(z: BallReal, k: int, table: ZeroTable, prec: int = 192):
    """(sum_{n<=N} (z + z_n^2)^-(k+1), tail bound) for z >= 0.

    The factorial of the complete-monotonicity derivative formula is NOT
    included; callers multiply k! where needed.
    """
    if to_float(z.lower()) < 0:
        raise BracketError("zero_sum requires z >= 0")
    pg = prec + 8
    total = None
    for zn_sq in table.squares(pg):
        term = zn_sq.add(z, pg).pow_int(k + 1, pg).recip(pg)
        total = term if total is None else total.add(term, pg)
    tail = _zero_sum_tail(k, table)
    return total, tail


def _zero_sum_tail(k: int, table: ZeroTable) -> TailBound:
    n = len(table)
    height = table[n - 1]
    a_lo = height.lower()
    m = 2 * k + 1
    log_a = mpf_log(a_lo, RAD_PREC, "c")
    inner = mpf_add(
        mpf_div(log_a, from_int(m), RAD_PREC, "c"),
        mpf_div(fone, from_int(m * m), RAD_PREC, "c"),
        RAD_PREC,
        "c",
    )
    # (1/pi) A^-m (log A / m + 1/m^2); the 1/pi already carries safety 2
    pi_lo = _pi_low()
    bound = mpf_div(
        mpf_div(inner, mpf_pow_int(a_lo, m, RAD_PREC, "f"), RAD_PREC, "c"),
        pi_lo,
        RAD_PREC,
        "c",
    )
    kind = "sum_reciprocal_squares" if k == 0 else "sum_power_k"
    return TailBound(
        cutoff_index=n,
        cutoff_height=height,
        bound_kind=kind,
        value=BallReal(bound),
    )


def _pi_low():
    from mpmath.libmp import mpf_pi

    return mpf_pi(RAD_PREC, "f")


def format_zero_table(table: ZeroTable, digits: int = 12, validated: bool = True) -> str:
    """Cache-file text: '#' header with metadata, then one ordinate per line."""
    from . import __version__

    header = [
        f"# zero table: count={len(table)} source={table.source}",
        f"# digits={digits} validated={'true' if validated else 'false'}",
        f"# generator=licrit {__version__}",
    ]
    body = []
    for ball in table:
        body.append(to_str(ball.mid, digits + 6, strip_zeros=False))
    formatted = []
    for text in body:
        if "." not in text:
            text += "."
        head, frac = text.split(".")
        frac = (frac + "0" * digits)[:digits]
        formatted.append(f"{head}.{frac}")
    return "\n".join(header + formatted) + "\n"
