"""Li coefficients by two independent routes with positivity verdicts.

The primary route extracts the Taylor coefficients a_k of log xi(1 + w)
about w = 0 by a trapezoidal contour sum and applies the exact algebraic
reduction

    lambda_n = n * sum_{k=1}^{n} C(n-1, n-k) a_k,

which has no analytic truncation beyond the contour itself.  The secondary
route sums 2 Re[1 - (1 - 1/rho)^n] over conjugate zero pairs of a truncated
table; it assumes the tabulated zeros are real and is labelled as such in
every output, serving purely as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath.libmp import from_int, from_man_exp, mpf_cmp, mpf_mul, to_float

from .ball import RAD_PREC, BallComplex, BallReal
from .context import PrecisionContext, certify
from .contour import contour_points, sup_on_circle, taylor_from_values
from .errors import OrderError, PrecisionExhausted, RadiusError
from .xi import XiSeriesAtOne, xi
from .zeros import TailBound, ZeroTable, _zero_sum_tail

__all__ = [
    "LiEntry",
    "LiSequence",
    "ZERO_SUM_ROUTE_NOTE",
    "log_xi_series",
    "li_lambda_derivative",
    "li_lambda_zero_sum",
    "li_positivity_report",
]

ZERO_SUM_ROUTE_NOTE = "RH-model, truncated: cross-check only, never adjudication"

DEFAULT_RADIUS_LOG2 = -2  # contour radius 1/4
_OUTER_RADIUS = 4
_ARC_COUNT = 512


@dataclass(frozen=True)
class LiEntry:
    n: int
    derivative_route: BallReal
    zero_sum_route: BallReal | None
    tail: TailBound | None
    verdict: str


@dataclass(frozen=True)
class LiSequence:
    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def entry(self, n: int) -> LiEntry:
        return self.entries[n - 1]


def _log_xi_outer_sup(prec: int):
    def f(point, p):
        return xi(point, p).log(p)

    from .errors import DomainErrorBall

    arcs = _ARC_COUNT
    while True:
        try:
            return sup_on_circle(
                f, BallComplex.from_int(1), _OUTER_RADIUS, arcs, RAD_PREC + 42
            )
        except DomainErrorBall:
            arcs *= 2
            if arcs > 8192:
                raise


_outer_sup_cache: dict[int, object] = {}


def log_xi_series(order: int, ctx: PrecisionContext, radius_log2: int = DEFAULT_RADIUS_LOG2) -> XiSeriesAtOne:
    """Taylor coefficients of log xi(1 + w), indices 1..order, certified.

    The contour radius must stay well inside the zero-free disk around
    s = 1 (nearest xi zeros are at distance > 14); radii at or beyond 1/2
    are rejected outright.
    """
    if order < 1:
        raise OrderError("series order must be at least 1")
    if radius_log2 >= -1:
        raise RadiusError("contour radius must stay below 1/2")
    prec = ctx.working_bits
    pg = prec + 12
    nodes = max(32, order + 8, int(math.ceil((prec + 20) / (-radius_log2 * 2))))
    nodes += nodes % 2
    key = 0
    if key not in _outer_sup_cache:
        _outer_sup_cache[key] = _log_xi_outer_sup(prec)
    outer_sup = _outer_sup_cache[key]

    points = contour_points(BallComplex.from_int(1), radius_log2, nodes, pg)
    values = []
    prev_arg = None
    for point in points:
        val = xi(point, pg)
        if not val.re.is_strictly_positive():
            raise PrecisionExhausted(
                "xi enclosure on the contour does not certify Re > 0; "
                "branch tracking ambiguous",
                result=None,
            )
        logval = val.log(pg)
        arg = to_float(logval.im.mid)
        if prev_arg is not None and abs(arg - prev_arg) > math.pi / 2:
            raise PrecisionExhausted(
                "argument jump above pi/2 between contour nodes", result=None
            )
        prev_arg = arg
        values.append(logval)
    coeffs = taylor_from_values(
        values, radius_log2, order, _OUTER_RADIUS, outer_sup, prec
    )
    reals = []
    for coeff in coeffs[1:]:
        reals.append(coeff.re.add_error(coeff.im.mag_upper()))
    return XiSeriesAtOne(coefficients=tuple(reals), order=order)


def li_lambda_derivative(n: int, series: XiSeriesAtOne, prec: int = 256) -> BallReal:
    """lambda_n from the series by the exact binomial reduction."""
    if n < 1:
        raise OrderError("lambda index must be positive")
    if series.order < n:
        raise OrderError(f"series order {series.order} below requested n = {n}")
    total = None
    for k in range(1, n + 1):
        c = math.comb(n - 1, n - k)
        term = series.coefficient(k).mul_int(c, prec)
        total = term if total is None else total.add(term, prec)
    return total.mul_int(n, prec)


def li_lambda_zero_sum(
    n: int, table: ZeroTable, prec: int = 192
) -> tuple[BallReal, TailBound]:
    """lambda_n as a truncated sum over conjugate zero pairs (RH model)."""
    if n < 1:
        raise OrderError("lambda index must be positive")
    if not len(table):
        raise OrderError("zero table is empty")
    pg = prec + 8
    half = BallReal(from_man_exp(1, -1))
    one = BallComplex.from_int(1)
    total = None
    for zn in table:
        rho = BallComplex(half, zn)
        term = one.sub(one.sub(rho.recip(pg), pg).pow_int(n, pg), pg)
        paired = term.re.shift(1)
        total = paired if total is None else total.add(paired, pg)
    base_tail = _zero_sum_tail(0, table)
    height = to_float(table[-1].lower())
    if height < 2 * n:
        raise OrderError("zero table too short for this lambda index")
    factor = from_int(n + int(1.2 * n * n) + 1)
    tail = TailBound(
        cutoff_index=base_tail.cutoff_index,
        cutoff_height=base_tail.cutoff_height,
        bound_kind="li_pair_sum",
        value=BallReal(mpf_mul(base_tail.raw(), factor, RAD_PREC, "c")),
        note=base_tail.note + "; pair bound (n + 1.2 n^2) / T^2",
    )
    return total, tail


def li_positivity_report(
    count: int, ctx: PrecisionContext, table: ZeroTable | None = None
) -> LiSequence:
    """LiSequence for n = 1..count; zero-sum route included when a table
    is supplied."""

    def build(c: PrecisionContext):
        series = log_xi_series(count, c)
        vals = [
            li_lambda_derivative(n, series, c.working_bits)
            for n in range(1, count + 1)
        ]
        worst = max(vals, key=lambda b: _rad_key(b))
        return _SeriesPack(vals, worst.rad)

    pack = certify(lambda c: build(c), ctx)
    entries = []
    for n in range(1, count + 1):
        ball = pack.values[n - 1]
        if ball.is_strictly_positive():
            verdict = "positive-certified"
        elif ball.is_strictly_negative():
            verdict = "negative-certified"
        else:
            verdict = "undecided"
        zs = None
        tail = None
        if table is not None and len(table):
            zs, tail = li_lambda_zero_sum(n, table, ctx.working_bits)
        entries.append(
            LiEntry(
                n=n,
                derivative_route=ball,
                zero_sum_route=zs,
                tail=tail,
                verdict=verdict,
            )
        )
    return LiSequence(entries=tuple(entries))


def _rad_key(ball: BallReal):
    from mpmath.libmp import fzero

    r = ball.rad
    if not r[1]:
        return -(10**9) if r == fzero else 10**9
    return r[2] + r[3]


class _SeriesPack:
    """Adapter so certify() can drive a whole coefficient batch at once."""

    __slots__ = ("values", "rad")

    def __init__(self, values, rad):
        self.values = values
        self.rad = rad
