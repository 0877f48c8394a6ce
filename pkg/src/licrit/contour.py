"""Taylor coefficients by trapezoidal contour sums, with aliasing bounds.

For F analytic on the closed disk of radius R about the center, Cauchy gives
|a_j| <= M_R / R^j, and the M-node trapezoid estimate of a_k on the circle of
radius r aliases to

    a_k^   = a_k + sum_{m>=1} a_{k+mM} r^(mM)
    error <= (M_R / R^k) q^M / (1 - q^M),     q = r / R.

Node count therefore trades off directly against the certified error; the
evaluation radius r is a power of two so r^k stays exact.
"""

from __future__ import annotations

import math

from mpmath.libmp import (
    fone,
    from_int,
    from_man_exp,
    mpf_div,
    mpf_mul,
    mpf_pow_int,
    mpf_shift,
    mpf_sub,
)

from .ball import RAD_PREC, BallComplex, BallReal
from .quadrature import cos_pi_fraction

__all__ = [
    "unit_roots",
    "contour_points",
    "taylor_from_values",
    "taylor_coefficients",
    "sup_on_circle",
]

_root_cache: dict[tuple[int, int], list[BallComplex]] = {}


def sin_pi_fraction(p: int, q: int, prec: int) -> BallReal:
    # sin(pi x) = cos(pi (x - 1/2))
    return cos_pi_fraction(2 * p - q, 2 * q, prec)


def unit_roots(m: int, prec: int) -> list[BallComplex]:
    """e^(2 pi i j / m) for j = 0..m-1 as complex balls."""
    key = (m, prec)
    try:
        return _root_cache[key]
    except KeyError:
        roots = [
            BallComplex(cos_pi_fraction(2 * j, m, prec), sin_pi_fraction(2 * j, m, prec))
            for j in range(m)
        ]
        _root_cache[key] = roots
        return roots


def sup_on_circle(f, center: BallComplex, radius: int, arcs: int, prec: int):
    """Raw upper bound for sup |f| on the circle of integer radius."""
    best = None
    for j in range(arcs):
        theta_mid = BallReal.from_fraction_pair(2 * j + 1, arcs, prec)
        half = BallReal.from_fraction_pair(1, arcs, prec)
        theta = theta_mid.add_error(half.mag_upper())
        # theta in units of pi
        from .ball import ball_pi

        angle = theta.mul(ball_pi(prec), prec)
        c, s = angle.cos_sin(prec)
        point = center.add(
            BallComplex(c.mul_int(radius, prec), s.mul_int(radius, prec)), prec
        )
        val = f(point, prec).abs_upper()
        if best is None or mpf_sub(val, best, RAD_PREC, "c")[0] == 0:
            best = val
    return best


def contour_points(center: BallComplex, radius_log2: int, nodes: int, prec: int):
    """The trapezoid nodes center + r e^(2 pi i j / nodes), r = 2^radius_log2."""
    roots = unit_roots(nodes, prec)
    r_ball = BallReal(from_man_exp(1, radius_log2))
    return [center.add(roots[j].mul_real(r_ball, prec), prec) for j in range(nodes)]


def taylor_from_values(
    values: list,
    radius_log2: int,
    count: int,
    outer_radius: int,
    outer_sup,
    prec: int,
) -> list[BallComplex]:
    """Coefficients a_0..a_count from precomputed contour node values.

    ``values[j]`` must be f at the node of index j from ``contour_points``;
    ``outer_sup`` is a raw upper bound for |f| on the circle of radius
    ``outer_radius`` inside which f is analytic, which prices the aliasing
    error of every coefficient.
    """
    pg = prec + 12
    nodes = len(values)
    roots = unit_roots(nodes, pg)
    coeffs = []
    q = mpf_shift(mpf_div(fone, from_int(outer_radius), RAD_PREC, "c"), radius_log2)
    q_pow = mpf_pow_int(q, nodes, RAD_PREC, "c")
    alias_base = mpf_div(q_pow, mpf_sub(fone, q_pow, RAD_PREC, "f"), RAD_PREC, "c")
    for k in range(count + 1):
        acc = None
        for j in range(nodes):
            w = roots[(j * k) % nodes].conj()
            term = values[j].mul(w, pg)
            acc = term if acc is None else acc.add(term, pg)
        coeff = acc.div_int(nodes, pg)
        # divide by r^k (exact power of two)
        coeff = coeff.shift(-radius_log2 * k)
        # aliasing error: M_R R^-k q^M / (1 - q^M)
        err = mpf_mul(
            mpf_div(
                outer_sup,
                mpf_pow_int(from_int(outer_radius), k, RAD_PREC, "f"),
                RAD_PREC,
                "c",
            ),
            alias_base,
            RAD_PREC,
            "c",
        )
        coeffs.append(coeff.add_error(err))
    return coeffs


def taylor_coefficients(
    f,
    center: BallComplex,
    radius_log2: int,
    count: int,
    nodes: int,
    outer_radius: int,
    outer_sup,
    prec: int,
) -> list[BallComplex]:
    """Coefficients a_0..a_count of f about the center, certified."""
    pg = prec + 12
    values = [f(point, pg) for point in contour_points(center, radius_log2, nodes, pg)]
    return taylor_from_values(values, radius_log2, count, outer_radius, outer_sup, prec)
