"""Certified xi, Xi, the Fourier density phi, and spectral moments.

xi is assembled pole-free as

    xi(s) = pi^(-s/2) Gamma(s/2 + 1) [(s-1) zeta(s)]

so the zeros of s(s-1) never meet the poles of Gamma and zeta explicitly;
the factor (s-1) zeta(s) comes straight out of the Euler-Maclaurin core.

The Fourier density is the even theta-derived series

    phi(t) = 2 pi sum_n {2 pi n^4 e^(9u/2) - 3 n^2 e^(5u/2)} exp(-n^2 pi e^(2u)),
    u = ... evaluated at whichever sign of the argument makes the outer
    exponential decay (the two orientations agree by the Jacobi theta
    transformation, which the test suite cross-verifies); this is the
    orientation with termwise doubly-exponential decay, giving certified
    series tails and integral cutoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath.libmp import (
    fone,
    from_int,
    from_man_exp,
    fzero,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_pow_int,
    mpf_sub,
    to_float,
)

from .ball import RAD_PREC, BallComplex, BallReal, ball_log_pi, ball_pi
from .errors import DomainErrorBall, NearZeroError, PoleError
from .gamma import gamma, gamma_digamma
from .quadrature import integrate_cc
from .zeta import (
    zeta_pair,
    zeta_pole_free_pair,
    zeta_times_s_minus_one,
)

__all__ = [
    "xi",
    "xi_pair",
    "xi_derivative",
    "xi_log_derivative",
    "big_xi",
    "big_xi_real",
    "big_xi_fourier",
    "xi_via_integral",
    "phi",
    "phi_printed_form",
    "omega",
    "moment",
    "moment_table",
    "XiSeriesAtOne",
    "MomentTable",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class XiSeriesAtOne:
    """Taylor coefficients of log xi(1 + w) about w = 0, indices 1..order."""

    coefficients: tuple
    order: int

    def coefficient(self, k: int) -> BallComplex:
        return self.coefficients[k - 1]


@dataclass(frozen=True)
class MomentTable:
    """Even spectral moments m_0, m_2, ..., m_{2n}."""

    moments: tuple

    def moment(self, n: int) -> BallReal:
        return self.moments[n]


def _pi_power_half_neg(s: BallComplex, prec: int) -> BallComplex:
    """pi^(-s/2)."""
    return s.mul_real(ball_log_pi(prec), prec).shift(-1).neg().exp(prec)


def xi(s: BallComplex, prec: int) -> BallComplex:
    pg = prec + 12
    env = _pi_power_half_neg(s, pg)
    g = gamma(s.shift(-1).add(BallComplex.from_int(1), pg), pg)
    z = zeta_times_s_minus_one(s, pg)
    return env.mul(g, pg).mul(z, prec)


def xi_pair(s: BallComplex, prec: int) -> tuple[BallComplex, BallComplex]:
    """(xi(s), xi'(s)) sharing the gamma and zeta passes."""
    pg = prec + 12
    env = _pi_power_half_neg(s, pg)
    half_arg = s.shift(-1).add(BallComplex.from_int(1), pg)
    g, psi = gamma_digamma(half_arg, pg)
    z, zp = zeta_pole_free_pair(s, pg)
    base = env.mul(g, pg)
    value = base.mul(z, prec)
    log_env_deriv = psi.sub(BallComplex.from_real(ball_log_pi(pg)), pg).shift(-1)
    deriv = base.mul(log_env_deriv.mul(z, pg).add(zp, pg), prec)
    return value, deriv


def xi_derivative(s: BallComplex, prec: int) -> BallComplex:
    return xi_pair(s, prec)[1]


def xi_log_derivative(s: BallComplex, prec: int) -> BallComplex:
    """xi'(s)/xi(s) assembled from component logarithmic derivatives.

    Requires the ball to exclude s = 0 and s = 1 and zeta(s) != 0.
    """
    pg = prec + 12
    if s.contains_zero():
        raise PoleError("log-derivative ball contains s = 0")
    z, zp = zeta_pair(s, pg)
    if z.contains_zero():
        raise NearZeroError("zeta ball contains zero; escalate precision or move")
    psi_half = gamma_digamma(s.shift(-1), pg)[1]
    total = s.recip(pg).add(s.sub(BallComplex.from_int(1), pg).recip(pg), pg)
    total = total.sub(BallComplex.from_real(ball_log_pi(pg)).shift(-1), pg)
    total = total.add(psi_half.shift(-1), pg)
    return total.add(zp.div(z, pg), prec)


def big_xi(z: BallComplex, prec: int) -> BallComplex:
    """Xi(z) = xi(1/2 + iz)."""
    pg = prec + 8
    half = BallReal(from_man_exp(1, -1))
    s = BallComplex(half.sub(z.im, pg), z.re)
    return xi(s, prec)


def big_xi_real(z: BallReal, prec: int) -> BallComplex:
    return big_xi(BallComplex.from_real(z), prec)


def big_xi_pair_real(z: BallReal, prec: int) -> tuple[BallComplex, BallComplex]:
    """(Xi(z), Xi'(z)) for real argument; Xi'(z) = i xi'(1/2 + iz)."""
    half = BallReal(from_man_exp(1, -1))
    s = BallComplex(half, z)
    v, d = xi_pair(s, prec)
    return v, d.mul_i()


# ----------------------------------------------------------------------
# theta sums
# ----------------------------------------------------------------------


def omega(x: BallComplex, prec: int) -> BallComplex:
    """sum_{n>=1} e^(-n^2 pi x) with a geometric tail bound; Re x > 0."""
    pg = prec + 8
    pix = x.mul_real(ball_pi(pg), pg)
    a_lo = pix.re.mag_lower()
    if not pix.re.is_strictly_positive():
        raise DomainErrorBall("omega requires Re x > 0")
    u = pix.neg().exp(pg)              # e^(-pi x)
    w = u.mul(u, pg)                   # e^(-2 pi x)
    v = u.mul(w, pg)                   # e^(-3 pi x)
    total = u
    n = 1
    a_lo_f = to_float(a_lo)
    threshold = -(prec + 8) * _LN2
    while (n + 1) ** 2 * (-a_lo_f) > threshold:
        u = u.mul(v, pg)
        v = v.mul(w, pg)
        total = total.add(u, pg)
        n += 1
        if n > 10000:
            raise DomainErrorBall("omega series will not converge here")
    # tail <= 2 e^(-(n+1)^2 a_lo) once (2n+3) a_lo >= ln 2
    tail = mpf_mul(
        from_int(2),
        mpf_exp(mpf_neg(mpf_mul(a_lo, from_int((n + 1) ** 2), RAD_PREC, "f")), RAD_PREC, "c"),
        RAD_PREC,
        "c",
    )
    return total.add_error(tail)


def _phi_series(u: BallComplex, prec: int) -> BallComplex:
    """2 pi sum_n {2 pi n^4 e^(-9u/2) - 3 n^2 e^(-5u/2)} exp(-n^2 pi e^(-2u)).

    Converges whenever Re(e^(-2u)) > 0 over the ball; fast for Re u <= 0.
    """
    pg = prec + 8
    two_pi = ball_pi(pg).shift(1)
    w = u.shift(1).neg().exp(pg)  # e^(-2u)
    piw = w.mul_real(ball_pi(pg), pg)
    a_lo = piw.re.mag_lower()
    if not piw.re.is_strictly_positive():
        raise DomainErrorBall("phi series needs Re(e^(-2u)) > 0")
    e9 = u.mul_real(BallReal.from_fraction_pair(-9, 2, pg), pg).exp(pg)
    e5 = u.mul_real(BallReal.from_fraction_pair(-5, 2, pg), pg).exp(pg)
    e9 = e9.mul_real(two_pi, pg)   # 2 pi e^(-9u/2)
    e5 = e5.mul_int(3, pg)         # 3 e^(-5u/2)
    base = piw.neg().exp(pg)       # e^(-pi w)
    sq = base.mul(base, pg)        # e^(-2 pi w)
    u_n = base                     # e^(-n^2 pi w)
    v_n = base.mul(sq, pg)         # e^(-(2n+1) pi w)
    e9_up = e9.abs_upper()
    e5_up = e5.abs_upper()
    a_lo_f = to_float(a_lo)
    coef_f = max(to_float(e9_up) + to_float(e5_up), 1e-300)
    total = None
    n = 1
    while True:
        coeff = e9.mul_int(n**4, pg).sub(e5.mul_int(n**2, pg), pg)
        term = coeff.mul(u_n, pg)
        total = term if total is None else total.add(term, pg)
        # stop once the next term bound is tiny and the ratio is at most 1/2
        nb = n + 1
        next_log = math.log(coef_f * (nb**4 + nb**2)) - nb * nb * a_lo_f
        if next_log < -(prec + 10) * _LN2 and (2 * n + 1) * a_lo_f > 3.5:
            break
        u_n = u_n.mul(v_n, pg)
        v_n = v_n.mul(sq, pg)
        n += 1
        if n > 20000:
            raise DomainErrorBall("phi series will not converge here")
    nb = n + 1
    coef_up = mpf_add(
        mpf_mul(e9_up, from_int(nb**4), RAD_PREC, "c"),
        mpf_mul(e5_up, from_int(nb**2), RAD_PREC, "c"),
        RAD_PREC,
        "c",
    )
    tail = mpf_mul(
        mpf_mul(from_int(2), coef_up, RAD_PREC, "c"),
        mpf_exp(mpf_neg(mpf_mul(a_lo, from_int(nb * nb), RAD_PREC, "f")), RAD_PREC, "c"),
        RAD_PREC,
        "c",
    )
    return total.mul_real(two_pi, prec).add_error(
        mpf_mul(tail, mpf_mul(from_int(7), fone, RAD_PREC, "c"), RAD_PREC, "c")
    )


def phi(t: BallReal, prec: int) -> BallReal:
    """The even Fourier density of Xi, evaluated in the decaying orientation."""
    u = t.abs_ball().neg()
    out = _phi_series(BallComplex.from_real(u), prec)
    return out.re.add_error(out.im.mag_upper())


def phi_printed_form(t: BallReal, prec: int) -> BallReal:
    """The series exactly as written, argument uninverted; needs t bounded."""
    out = _phi_series(BallComplex.from_real(t), prec)
    return out.re.add_error(out.im.mag_upper())


def _phi_box(t: BallComplex, prec: int) -> BallComplex:
    return _phi_series(t.neg(), prec)


# ----------------------------------------------------------------------
# integral representations
# ----------------------------------------------------------------------


def xi_via_integral(s: BallComplex, prec: int) -> BallComplex:
    """2 xi(s) = 1 + s(s-1) int_1^inf (x^(s/2) + x^((1-s)/2)) omega(x) dx/x."""
    pg = prec + 10
    half_s = s.shift(-1)
    half_1ms = BallComplex.from_int(1).sub(s, pg).shift(-1)
    sigma_hi = to_float(s.re.upper())
    sigma_lo = to_float(s.re.lower())
    a_exp = max(sigma_hi / 2, (1 - sigma_lo) / 2, 0.0)

    def integrand(x: BallComplex, p: int) -> BallComplex:
        logx = x.log(p)
        part = half_s.mul(logx, p).exp(p).add(half_1ms.mul(logx, p).exp(p), p)
        return part.mul(omega(x, p), p).div(x, p)

    cutoff = 2
    while math.pi * cutoff < (prec + 24) * _LN2 + max(a_exp - 1, 0.0) * math.log(cutoff) + 3:
        cutoff *= 2
    total = None
    lo = 1
    while lo < cutoff:
        hi = min(lo * 2, cutoff)
        seg = integrate_cc(
            integrand, BallReal.from_int(lo), BallReal.from_int(hi), prec, rho=4.0
        )
        total = seg if total is None else total.add(seg, pg)
        lo = hi
    # tail: integrand bounded by 2.1 x^(a-1) e^(-pi x); for x >= cutoff the
    # log-derivative is below -(pi - (a-1)/cutoff) <= -2, so tail <= 1.1 c(X)
    pi_lo = mpf_pi(RAD_PREC, "f")
    expo = mpf_neg(mpf_mul(pi_lo, from_int(cutoff), RAD_PREC, "f"))
    xpow = _up_pow_float(cutoff, a_exp - 1)
    tail = mpf_mul(
        mpf_mul(from_int(3), xpow, RAD_PREC, "c"),
        mpf_exp(expo, RAD_PREC, "c"),
        RAD_PREC,
        "c",
    )
    total = total.add_error(tail)
    one = BallComplex.from_int(1)
    return one.add(s.mul(s.sub(one, pg), pg).mul(total, pg), pg).shift(-1)


def _up_pow_float(base: int, expo: float):
    """Upper bound for base**expo, base >= 1."""
    if expo <= 0:
        return fone
    ln_up = mpf_log(from_int(base), RAD_PREC, "c")
    e_up = mpf_add(
        from_man_exp(int(expo * 2**20) + 1, -20), fzero, RAD_PREC, "c"
    )
    return mpf_exp(mpf_mul(ln_up, e_up, RAD_PREC, "c"), RAD_PREC, "c")


def _fourier_cutoff(prec: int, n: int) -> float:
    t = 1.0
    for _ in range(40):
        need = (prec + 26) * _LN2 + 4.5 * t + 2 * n * math.log(max(t, 1.0)) + 4.2
        t_new = 0.5 * math.log(need / math.pi)
        if abs(t_new - t) < 1e-9:
            break
        t = max(t_new, 1.0)
    return max(t + 0.07, 1.0)


def _phi_t_tail(cutoff: float, n: int, prec: int):
    """Raw bound for int_T^inf t^(2n) phi(t) dt in the decaying orientation."""
    # phi(t) <= 59 e^(9t/2 - pi e^(2t)); log-derivative check makes the
    # integral at most its value at T
    t_up = from_man_exp(int(cutoff * 2**20) + 1, -20)
    if 2 * math.pi * math.exp(2 * cutoff) < 2 * n / cutoff + 5.5:
        raise DomainErrorBall("fourier cutoff too small for this moment order")
    e2t_lo = mpf_exp(mpf_mul(from_int(2), from_man_exp(int(cutoff * 2**20), -20), RAD_PREC, "f"), RAD_PREC, "f")
    expo = mpf_sub(
        mpf_mul(from_man_exp(9, -1), t_up, RAD_PREC, "c"),
        mpf_mul(mpf_pi(RAD_PREC, "f"), e2t_lo, RAD_PREC, "f"),
        RAD_PREC,
        "c",
    )
    tpow = _up_pow_float(max(int(cutoff) + 1, 2), 2 * n) if n else fone
    return mpf_mul(
        mpf_mul(from_int(59), tpow, RAD_PREC, "c"),
        mpf_exp(expo, RAD_PREC, "c"),
        RAD_PREC,
        "c",
    )


def _fourier_segments(cutoff: float):
    count = max(2, int(math.ceil(cutoff / 0.75)))
    return [i * cutoff / count for i in range(count)] + [cutoff]


def big_xi_fourier(z: BallReal, prec: int) -> BallReal:
    """Xi(z) = 2 int_0^inf cos(t z) phi(t) dt for real z, certified."""
    pg = prec + 10
    cutoff = _fourier_cutoff(prec, 0)

    def integrand(t: BallComplex, p: int) -> BallComplex:
        w = t.mul_real(z, p).mul_i()
        cos_tz = w.exp(p).add(w.neg().exp(p), p).shift(-1)
        return cos_tz.mul(_phi_box(t, p), p)

    pts = _fourier_segments(cutoff)
    total = None
    for a, b in zip(pts, pts[1:]):
        seg = integrate_cc(
            integrand,
            BallReal.from_float(a),
            BallReal.from_float(b),
            prec,
            rho=3.0,
        )
        total = seg if total is None else total.add(seg, pg)
    total = total.add_error(_phi_t_tail(cutoff, 0, prec))
    out = total.shift(1)
    return out.re.add_error(out.im.mag_upper())


def moment(n: int, prec: int) -> BallReal:
    """m_{2n} = int t^(2n) phi(t) dt over the line, strictly positive."""
    pg = prec + 10
    cutoff = _fourier_cutoff(prec, n)

    def integrand(t: BallComplex, p: int) -> BallComplex:
        return t.pow_int(2 * n, p).mul(_phi_box(t, p), p) if n else _phi_box(t, p)

    pts = _fourier_segments(cutoff)
    total = None
    for a, b in zip(pts, pts[1:]):
        seg = integrate_cc(
            integrand,
            BallReal.from_float(a),
            BallReal.from_float(b),
            prec,
            rho=3.0,
        )
        total = seg if total is None else total.add(seg, pg)
    total = total.add_error(_phi_t_tail(cutoff, n, prec))
    out = total.shift(1)
    return out.re.add_error(out.im.mag_upper())


def moment_table(max_n: int, prec: int) -> MomentTable:
    return MomentTable(tuple(moment(n, prec) for n in range(max_n + 1)))
