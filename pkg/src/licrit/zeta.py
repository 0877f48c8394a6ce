"""Certified Riemann zeta: Euler-Maclaurin primary route plus cross-checks.

The Euler-Maclaurin core computes the entire part ``A(s)`` such that

    zeta(s) = A(s) + N^(1-s) / (s - 1)

with an explicit sawtooth-Bernoulli remainder folded into the radius:
after v correction terms the error is at most

    2 zeta(2v+1) / (2 pi)^(2v+1) * |(s)_{2v+1}| * N^(-sigma-2v) / (sigma+2v)

which follows from |B~_m(x)| <= 2 m! zeta(m) / (2 pi)^m.  Splitting off the
pole term keeps ``(s-1) zeta(s)`` (and its s-derivative) computable as a
single pole-free ball, which is what the xi assembly consumes.
"""

from __future__ import annotations

import math
from fractions import Fraction

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

from .ball import RAD_PREC, BallComplex, BallReal
from .bernoulli import bernoulli_over_factorial
from .errors import PoleError

__all__ = [
    "zeta",
    "zeta_derivative",
    "zeta_times_s_minus_one",
    "zeta_times_s_minus_one_derivative",
    "zeta_dirichlet",
    "zeta_eta",
]

_LN2 = math.log(2.0)

_log_cache: dict[tuple[int, int], BallReal] = {}
_spf_cache: dict[int, list[int]] = {}


def log_int_ball(n: int, prec: int) -> BallReal:
    key = (n, prec)
    try:
        return _log_cache[key]
    except KeyError:
        mid = mpf_log(from_int(n), prec, "n")
        ball = BallReal(mid, from_man_exp(1, mid[2] + mid[3] - prec + 2))
        _log_cache[key] = ball
        return ball


def _smallest_prime_factors(n: int) -> list[int]:
    try:
        return _spf_cache[n]
    except KeyError:
        spf = list(range(n + 1))
        for p in range(2, int(n**0.5) + 1):
            if spf[p] == p:
                for m in range(p * p, n + 1, p):
                    if spf[m] == m:
                        spf[m] = p
        _spf_cache[n] = spf
        return spf


def _abs_upper_float(s: BallComplex) -> float:
    re = abs(to_float(s.re.mid)) + to_float(s.re.rad)
    im = abs(to_float(s.im.mid)) + to_float(s.im.rad)
    return math.hypot(re, im)


def _sigma_lower(s: BallComplex):
    return s.re.lower()


def _choose_params(sigma_lo: float, s_abs: float, prec: int) -> tuple[int, int]:
    """Pick the cutoff N and a correction-term cap by float cost estimates."""
    target = -(prec + 14) * _LN2
    log2pi = math.log(2 * math.pi)
    best = None
    N = max(8, int(0.25 * prec), int((abs(s_abs) + 8) / 4))
    for _ in range(40):
        if 2 * math.pi * N > s_abs + 6:
            vcap = min(2000, int((2 * math.pi * N - s_abs) / 2) - 1)
            v_needed = None
            for v in range(max(1, int((2.5 - sigma_lo) / 2) + 1), vcap):
                # log |(s)_{2v+1}| <= (2v+1) log(s_abs + 2v + 1)
                est = (
                    math.log(2.5)
                    + (2 * v + 1) * math.log(s_abs + 2 * v + 1)
                    - (2 * v + 1) * log2pi
                    - (sigma_lo + 2 * v) * math.log(N)
                )
                if est <= target:
                    v_needed = v
                    break
            if v_needed is not None:
                cost = N + 4 * v_needed
                if best is None or cost < best[0]:
                    best = (cost, N, v_needed)
                elif cost > 1.4 * best[0]:
                    break
        N = int(N * 1.3) + 1
    if best is None:
        raise PoleError("no Euler-Maclaurin parameters found")
    return best[1], best[2]


def _up_int_pow(n: int, exponent, prec=RAD_PREC):
    """Upper bound for n**x with raw mpf exponent x."""
    ln_up = mpf_log(from_int(n), prec, "c")
    ln_dn = mpf_log(from_int(n), prec, "f")
    prod = mpf_mul(exponent, ln_dn if exponent[0] else ln_up, prec, "c")
    return mpf_exp(prod, prec, "c")


class _EmCore:
    __slots__ = ("A", "A_prime", "N", "lnN", "NpowS")

    def __init__(self, A, A_prime, N, lnN, NpowS):
        self.A = A
        self.A_prime = A_prime
        self.N = N
        self.lnN = lnN
        self.NpowS = NpowS


def _power_table(s_neg: BallComplex, N: int, prec: int) -> list:
    """n^(-s) for n = 1..N-1, composites built multiplicatively."""
    spf = _smallest_prime_factors(max(N, 4))
    powers: list = [None] * N
    powers[1] = BallComplex.from_int(1)
    for n in range(2, N):
        p = spf[n]
        if p == n:
            powers[n] = s_neg.mul_real(log_int_ball(n, prec), prec).exp(prec)
        else:
            powers[n] = powers[p].mul(powers[n // p], prec)
    return powers


def _complex_abs_lower(z: BallComplex):
    a = z.re.mag_lower()
    b = z.im.mag_lower()
    return a if mpf_cmp(a, b) >= 0 else b


def _em_core(s: BallComplex, prec: int, want_derivative: bool) -> _EmCore:
    pg = prec + 16
    sigma_lo_raw = _sigma_lower(s)
    sigma_lo = to_float(sigma_lo_raw)
    s_abs = _abs_upper_float(s)
    N, _ = _choose_params(sigma_lo, s_abs, prec)

    s_neg = s.neg()
    powers = _power_table(s_neg, N, pg)
    S = BallComplex.from_int(1)
    for n in range(2, N):
        S = S.add(powers[n], pg)
    S_prime = None
    if want_derivative:
        S_prime = BallComplex(BallReal.zero(), BallReal.zero())
        for n in range(2, N):
            S_prime = S_prime.sub(powers[n].mul_real(log_int_ball(n, pg), pg), pg)

    lnN = log_int_ball(N, pg)
    NpowS = s_neg.mul_real(lnN, pg).exp(pg)

    A = S.add(NpowS.shift(-1), pg)
    A_prime = None
    if want_derivative:
        A_prime = S_prime.sub(NpowS.mul_real(lnN, pg).shift(-1), pg)

    scale = S.abs_upper()
    if mpf_cmp(scale, fone) < 0:
        scale = fone
    threshold = mpf_mul(scale, from_man_exp(1, -(prec + 12)), RAD_PREC, "f")

    poch = s
    poch_prime = BallComplex.from_int(1)
    q = NpowS.div_int(N, pg)  # N^(1-s-2k) at k = 1; divided by N^2 per step
    inv_abs_sum = mpf_div(fone, _complex_abs_lower(s), RAD_PREC, "c") if want_derivative else None
    vcap = min(2000, int((2 * math.pi * N - s_abs) / 2) - 1)
    k = 1
    while True:
        coeff = bernoulli_over_factorial(2 * k, pg)
        term = poch.mul(q, pg).mul_real(coeff, pg)
        A = A.add(term, pg)
        if want_derivative:
            dterm = poch_prime.mul(q, pg).sub(poch.mul(q, pg).mul_real(lnN, pg), pg)
            A_prime = A_prime.add(dterm.mul_real(coeff, pg), pg)
        f1 = s.add_real(BallReal.from_int(2 * k - 1), pg)
        f2 = s.add_real(BallReal.from_int(2 * k), pg)
        if want_derivative:
            lo1 = _complex_abs_lower(f1)
            lo2 = _complex_abs_lower(f2)
            if lo1 == fzero or lo2 == fzero:
                raise PoleError("Pochhammer factor ball touches zero")
            inv_abs_sum = mpf_add(
                inv_abs_sum,
                mpf_add(
                    mpf_div(fone, lo1, RAD_PREC, "c"),
                    mpf_div(fone, lo2, RAD_PREC, "c"),
                    RAD_PREC,
                    "c",
                ),
                RAD_PREC,
                "c",
            )
            poch_prime = poch_prime.mul(f1.mul(f2, pg), pg).add(poch.mul(f1.add(f2, pg), pg), pg)
        poch = poch.mul(f1.mul(f2, pg), pg)
        q = q.div_int(N * N, pg)
        done = mpf_cmp(term.abs_upper(), threshold) <= 0 and sigma_lo + 2 * k > 1.0
        k += 1
        if done or k > vcap:
            break

    v = k - 1  # poch now holds (s)_{2v+1}
    sigma_2v = mpf_add(sigma_lo_raw, from_int(2 * v), RAD_PREC, "f")
    if mpf_cmp(sigma_2v, fzero) <= 0:
        raise PoleError("Euler-Maclaurin remainder needs sigma + 2v > 0")
    two_pi_low = mpf_mul(mpf_pi(RAD_PREC, "f"), from_int(2), RAD_PREC, "f")
    two_pi_pow = mpf_pow_int(two_pi_low, 2 * v + 1, RAD_PREC, "f")
    npow_up = _up_int_pow(N, mpf_neg(sigma_2v))
    factor = mpf_div(
        mpf_mul(from_man_exp(5, -1), poch.abs_upper(), RAD_PREC, "c"),
        two_pi_pow,
        RAD_PREC,
        "c",
    )
    remainder = mpf_div(mpf_mul(factor, npow_up, RAD_PREC, "c"), sigma_2v, RAD_PREC, "c")
    A = A.add_error(remainder)
    if want_derivative:
        lnN_up = mpf_log(from_int(N), RAD_PREC, "c")
        i0 = mpf_div(npow_up, sigma_2v, RAD_PREC, "c")
        i1 = mpf_mul(
            npow_up,
            mpf_add(
                mpf_div(lnN_up, sigma_2v, RAD_PREC, "c"),
                mpf_div(fone, mpf_mul(sigma_2v, sigma_2v, RAD_PREC, "f"), RAD_PREC, "c"),
                RAD_PREC,
                "c",
            ),
            RAD_PREC,
            "c",
        )
        d_remainder = mpf_div(
            mpf_mul(
                mpf_mul(from_man_exp(5, -1), poch.abs_upper(), RAD_PREC, "c"),
                mpf_add(i1, mpf_mul(inv_abs_sum, i0, RAD_PREC, "c"), RAD_PREC, "c"),
                RAD_PREC,
                "c",
            ),
            two_pi_pow,
            RAD_PREC,
            "c",
        )
        A_prime = A_prime.add_error(d_remainder)

    return _EmCore(A, A_prime, N, lnN, NpowS)


def _ball_contains_one(s: BallComplex) -> bool:
    return s.re.contains_raw(fone) and s.im.contains_zero()


def zeta(s: BallComplex, prec: int) -> BallComplex:
    """Analytic continuation of the zeta series; PoleError if 1 is inside."""
    if _ball_contains_one(s):
        raise PoleError("zeta ball intersects the pole at s = 1")
    core = _em_core(s, prec, want_derivative=False)
    pole = core.NpowS.mul_int(core.N, prec + 16).div(
        s.sub(BallComplex.from_int(1), prec + 16), prec + 16
    )
    return core.A.add(pole, prec)


def zeta_derivative(s: BallComplex, prec: int) -> BallComplex:
    if _ball_contains_one(s):
        raise PoleError("zeta ball intersects the pole at s = 1")
    pg = prec + 16
    core = _em_core(s, prec, want_derivative=True)
    sm1 = s.sub(BallComplex.from_int(1), pg)
    n_pow = core.NpowS.mul_int(core.N, pg)  # N^(1-s)
    inner = core.lnN
    pole_part = n_pow.mul(
        BallComplex.from_real(inner).div(sm1, pg).add(sm1.mul(sm1, pg).recip(pg), pg), pg
    )
    return core.A_prime.sub(pole_part, prec)


def zeta_pair(s: BallComplex, prec: int) -> tuple[BallComplex, BallComplex]:
    """(zeta(s), zeta'(s)) from a single Euler-Maclaurin pass."""
    if _ball_contains_one(s):
        raise PoleError("zeta ball intersects the pole at s = 1")
    pg = prec + 16
    core = _em_core(s, prec, want_derivative=True)
    sm1 = s.sub(BallComplex.from_int(1), pg)
    n_pow = core.NpowS.mul_int(core.N, pg)
    value = core.A.add(n_pow.div(sm1, pg), prec)
    pole_part = n_pow.mul(
        BallComplex.from_real(core.lnN).div(sm1, pg).add(sm1.mul(sm1, pg).recip(pg), pg),
        pg,
    )
    deriv = core.A_prime.sub(pole_part, prec)
    return value, deriv


def zeta_pole_free_pair(s: BallComplex, prec: int) -> tuple[BallComplex, BallComplex]:
    """((s-1) zeta(s), d/ds[(s-1) zeta(s)]) from a single pass; no pole."""
    pg = prec + 16
    core = _em_core(s, prec, want_derivative=True)
    sm1 = s.sub(BallComplex.from_int(1), pg)
    n_pow = core.NpowS.mul_int(core.N, pg)
    value = sm1.mul(core.A, pg).add(n_pow, prec)
    deriv = core.A.add(sm1.mul(core.A_prime, pg), pg).sub(
        n_pow.mul_real(core.lnN, pg), prec
    )
    return value, deriv


def zeta_times_s_minus_one(s: BallComplex, prec: int) -> BallComplex:
    """(s - 1) zeta(s) as a single pole-free ball."""
    pg = prec + 16
    core = _em_core(s, prec, want_derivative=False)
    sm1 = s.sub(BallComplex.from_int(1), pg)
    return sm1.mul(core.A, pg).add(core.NpowS.mul_int(core.N, pg), prec)


def zeta_times_s_minus_one_derivative(s: BallComplex, prec: int) -> BallComplex:
    """d/ds [(s - 1) zeta(s)], also pole-free."""
    pg = prec + 16
    core = _em_core(s, prec, want_derivative=True)
    sm1 = s.sub(BallComplex.from_int(1), pg)
    n_pow = core.NpowS.mul_int(core.N, pg)
    return core.A.add(sm1.mul(core.A_prime, pg), pg).sub(
        n_pow.mul_real(core.lnN, pg), prec
    )


# ----------------------------------------------------------------------
# cross-check routes
# ----------------------------------------------------------------------


def zeta_dirichlet(s: BallComplex, prec: int, terms: int = 4000) -> BallComplex:
    """Raw Dirichlet sum with an integral tail bound; needs Re(s) > 1.5.

    The tail keeps this a moderate-accuracy consistency route: the result
    radius is of order terms^(1 - sigma).
    """
    sigma_lo = to_float(_sigma_lower(s))
    if sigma_lo <= 1.5:
        raise PoleError("Dirichlet route requires Re(s) > 1.5")
    pg = prec + 8
    s_neg = s.neg()
    total = BallComplex.from_int(1)
    for n in range(2, terms):
        total = total.add(s_neg.mul_real(log_int_ball(n, pg), pg).exp(pg), pg)
    # |tail| <= integral_(terms-1)^inf x^(-sigma) dx
    expo = mpf_sub(fone, _sigma_lower(s), RAD_PREC, "c")
    tail = mpf_div(
        _up_int_pow(terms - 1, expo),
        mpf_sub(_sigma_lower(s), fone, RAD_PREC, "f"),
        RAD_PREC,
        "c",
    )
    return total.add_error(tail)


def _borwein_d(n: int) -> list[int]:
    ds = []
    term = Fraction(1, n)  # (n-1)! / n!
    acc = term
    ds.append(1)  # n * acc at i=0
    for i in range(1, n + 1):
        term = term * Fraction(4 * (n + i - 1) * (n - i + 1), (2 * i) * (2 * i - 1))
        acc += term
        val = acc * n
        assert val.denominator == 1
        ds.append(int(val))
    return ds


def zeta_eta(s: BallComplex, prec: int) -> BallComplex:
    """Alternating-series route with Chebyshev acceleration, Re(s) >= 1/2.

    Error bound 3 (1+2|t|) e^(pi |t| / 2) / (3+sqrt(8))^n, doubled for safety.
    """
    sigma_lo = to_float(_sigma_lower(s))
    if sigma_lo < 0.5:
        raise PoleError("eta route implemented for Re(s) >= 1/2")
    t_abs = abs(to_float(s.im.mid)) + to_float(s.im.rad)
    pg = prec + 8
    n = int((prec + 16 + math.pi * t_abs / (2 * _LN2)) * _LN2 / math.log(3 + math.sqrt(8))) + 4
    ds = _borwein_d(n)
    s_neg = s.neg()
    total = None
    for k in range(n):
        coeff = ds[k] - ds[n] if k % 2 == 0 else ds[n] - ds[k]
        term = s_neg.mul_real(log_int_ball(k + 1, pg), pg).exp(pg).mul_int(coeff, pg)
        total = term if total is None else total.add(term, pg)
    eta = total.div_int(-ds[n], pg)
    # error bound 3 (1+2|t|) e^(pi|t|/2) / (3+sqrt 8)^n, doubled
    fac = 6.0 * (1 + 2 * t_abs) * math.exp(math.pi * t_abs / 2)
    q_low = mpf_add(from_int(3), mpf_exp(
        mpf_mul(mpf_log(from_int(8), RAD_PREC, "f"), from_man_exp(1, -1), RAD_PREC, "f"),
        RAD_PREC, "f"), RAD_PREC, "f")
    err = mpf_div(from_man_exp(int(fac) + 1, 0), mpf_pow_int(q_low, n, RAD_PREC, "f"),
                  RAD_PREC, "c")
    eta = eta.add_error(err)
    ln2 = log_int_ball(2, pg)
    two_pow = s_neg.add(BallComplex.from_int(1), pg).mul_real(ln2, pg).exp(pg)
    denom = BallComplex.from_int(1).sub(two_pow, pg)
    return eta.div(denom, prec)
