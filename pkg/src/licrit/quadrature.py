"""Certified Clenshaw-Curtis quadrature on analytic integrands.

For g analytic on the Bernstein ellipse E_rho of a segment with |g| <= M,
the Chebyshev coefficients satisfy |a_k| <= 2 M rho^-k, and since the
(n+1)-point rule integrates degree-n polynomials exactly while both the
integral and the rule are bounded by 2 on every T_k, the rule error on
[-1, 1] is at most

    4 sum_{k>n} |a_k| <= 8 M rho^-n / (rho - 1).

M is certified by evaluating the integrand on a complex ball covering the
ellipse's bounding box, so the only analyticity input a caller supplies is
a safe rho for each segment.
"""

from __future__ import annotations

import math

from mpmath.libmp import (
    fone,
    from_float,
    from_int,
    from_man_exp,
    from_rational,
    fzero,
    mpf_cos_pi,
    mpf_div,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pow_int,
    mpf_sub,
    to_float,
)

from .ball import RAD_PREC, BallComplex, BallReal
from .errors import DomainErrorBall

__all__ = ["integrate_cc", "integrate_exp_power_tail", "cos_pi_fraction"]

_weight_cache: dict[tuple[int, int], list[BallReal]] = {}
_node_cache: dict[tuple[int, int], list[BallReal]] = {}


def cos_pi_fraction(p: int, q: int, prec: int) -> BallReal:
    """Ball enclosure of cos(pi p / q)."""
    x = from_rational(p, q, prec + 8, "n")
    mid = mpf_cos_pi(x, prec, "n")
    # |d cos(pi x)/dx| <= pi < 4; rational rounding error <= 2^-(prec+7) |x|
    slack = from_man_exp(abs(p) // q + 1, -(prec + 4))
    rad = mpf_mul(from_int(4), slack, RAD_PREC, "c")
    return BallReal(mid, mpf_mul(rad, fone, RAD_PREC, "c")).add_error(
        from_man_exp(1, mid[2] + mid[3] - prec + 2) if mid[1] else fzero
    )


def _cc_nodes(n: int, prec: int) -> list[BallReal]:
    key = (n, prec)
    try:
        return _node_cache[key]
    except KeyError:
        nodes = [cos_pi_fraction(j, n, prec) for j in range(n + 1)]
        _node_cache[key] = nodes
        return nodes


def _cc_weights(n: int, prec: int) -> list[BallReal]:
    """Clenshaw-Curtis weights for n+1 Chebyshev points on [-1, 1], n even."""
    key = (n, prec)
    try:
        return _weight_cache[key]
    except KeyError:
        pass
    weights = []
    half = n // 2
    for j in range(n + 1):
        acc = BallReal.from_int(1)
        for m in range(1, half + 1):
            b_m = 1 if 2 * m == n else 2
            c = cos_pi_fraction(2 * m * j, n, prec)
            acc = acc.sub(c.mul_int(b_m, prec).div_int(4 * m * m - 1, prec), prec)
        c_j = 1 if j in (0, n) else 2
        weights.append(acc.mul_int(c_j, prec).div_int(n, prec))
    _weight_cache[(n, prec)] = weights
    return weights


def _ellipse_box(center: BallReal, halfw: BallReal, rho: float, prec: int) -> BallComplex:
    """Complex ball covering the Bernstein ellipse E_rho of the segment."""
    alpha = (rho + 1.0 / rho) / 2.0
    beta = (rho - 1.0 / rho) / 2.0
    a_ball = halfw.mul(BallReal.from_float(alpha * 1.0000001), prec)
    b_ball = halfw.mul(BallReal.from_float(beta * 1.0000001), prec)
    re = BallReal(center.mid, _radd(center.rad, a_ball.mag_upper()))
    im = BallReal(fzero, b_ball.mag_upper())
    return BallComplex(re, im)


def _radd(a, b):
    from mpmath.libmp import mpf_add

    return mpf_add(a, b, RAD_PREC, "c")


def integrate_cc(f, a: BallReal, b: BallReal, prec: int, rho: float,
                 n_max: int = 4096, depth: int = 0):
    """Certified integral of f over [a, b].

    ``f(z, prec) -> BallComplex`` must be analytic on the Bernstein ellipse
    E_rho of the segment (rho > 1, relative to the segment length); it is
    evaluated once on a box covering that ellipse to certify the sup bound.
    Splits the segment when the required node count would exceed n_max.
    """
    pg = prec + 10
    center = a.add(b, pg).shift(-1)
    halfw = b.sub(a, pg).shift(-1)
    box = _ellipse_box(center, halfw, rho, pg)
    m_val = f(box, RAD_PREC + 30)
    m_up = to_float(m_val.abs_upper())
    if not math.isfinite(m_up):
        raise DomainErrorBall("integrand unbounded on the quadrature ellipse")
    width = to_float(halfw.mag_upper()) * 2.0
    target_log2 = -(prec + 8)
    # 8 M rho^-n / (rho-1) * width/2 <= 2^target  =>  n >= ...
    log2rho = math.log2(rho)
    m_log2 = math.log2(m_up) if m_up > 0 else target_log2
    n_req = (m_log2 + math.log2(max(width, 1e-300)) + 5 - math.log2(rho - 1) - target_log2) / log2rho
    n = int(n_req) + 2
    n += n % 2
    if n > n_max and depth < 12:
        mid_ball = center.midpoint_ball()
        left = integrate_cc(f, a, mid_ball, prec, rho, n_max, depth + 1)
        right = integrate_cc(f, mid_ball, b, prec, rho, n_max, depth + 1)
        return left.add(right, prec)
    n = max(8, min(n, n_max))
    nodes = _cc_nodes(n, pg)
    weights = _cc_weights(n, pg)
    total = None
    for j in range(n + 1):
        x = center.add(halfw.mul(nodes[j], pg), pg)
        val = f(BallComplex.from_real(x), pg).mul_real(weights[j], pg)
        total = val if total is None else total.add(val, pg)
    total = total.mul_real(halfw, pg)
    # rigorous error: width/2 * 8 M rho^-n / (rho - 1), rho taken as a float
    rho_lo = from_float(rho * 0.9999999)
    err = mpf_div(
        mpf_mul(
            mpf_mul(from_int(8), m_val.abs_upper(), RAD_PREC, "c"),
            halfw.mag_upper(),
            RAD_PREC,
            "c",
        ),
        mpf_mul(
            mpf_pow_int(rho_lo, n, RAD_PREC, "f"),
            mpf_sub(rho_lo, fone, RAD_PREC, "f"),
            RAD_PREC,
            "f",
        ),
        RAD_PREC,
        "c",
    )
    return total.add_error(err)


def integrate_exp_power_tail(z: BallComplex, prec: int) -> BallComplex:
    """Certified integral of e^-t t^(z-1) over [1, infinity)."""
    pg = prec + 8
    zm1 = z.sub(BallComplex.from_int(1), pg)
    sigma_hi = to_float(zm1.re.upper())

    def integrand(t: BallComplex, p: int) -> BallComplex:
        return zm1.mul(t.log(p), p).sub(t, p).exp(p)

    cutoff = 2
    while cutoff < (prec + 16) * math.log(2) + 2 * max(sigma_hi, 1.0) * math.log(
        max(cutoff, 2)
    ) + 4:
        cutoff *= 2
    total = None
    lo = 1
    while lo < cutoff:
        hi = min(2 * lo, cutoff)
        # ellipse must stay right of t = 0: center >= 1.5 lo, halfwidth <= lo/2
        seg = integrate_cc(
            integrand,
            BallReal.from_int(lo),
            BallReal.from_int(hi),
            prec,
            rho=2.0 + 2.0 * lo / (hi - lo),
        )
        total = seg if total is None else total.add(seg, pg)
        lo = hi
    # tail: for t >= T >= 2(sigma+1), e^-t t^(sigma-1) halves each unit step
    t_log = mpf_mul(
        mpf_log(from_int(cutoff), RAD_PREC, "c"),
        BallReal(zm1.re.upper()).mid if sigma_hi > 0 else fzero,
        RAD_PREC,
        "c",
    )
    tail = mpf_mul(
        mpf_exp(
            mpf_sub(t_log, from_int(cutoff), RAD_PREC, "c"), RAD_PREC, "c"
        ),
        from_int(2),
        RAD_PREC,
        "c",
    )
    return total.add_error(tail)
