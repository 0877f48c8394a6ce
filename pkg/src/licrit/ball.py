"""Midpoint-radius enclosures over mpmath's raw mpf layer.

A :class:`BallReal` stores an arbitrary-precision dyadic midpoint together
with a low-precision nonnegative radius; the represented set is
``[mid - rad, mid + rad]`` and every operation returns a ball containing
the exact image of its input sets.  Midpoints are rounded to the caller's
working precision; radii are maintained at a fixed 30-bit precision with
outward rounding, plus a blanket multiplicative cushion wherever a
transcendental evaluation feeds a bound.

:class:`BallComplex` is the rectangular (componentwise) complex variant.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath.libmp import (
    fhalf,
    fnan,
    fninf,
    fone,
    from_float,
    from_int,
    from_man_exp,
    from_rational,
    from_str,
    fzero,
    finf,
    mpf_abs,
    mpf_add,
    mpf_atan,
    mpf_cmp,
    mpf_cos_sin,
    mpf_div,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_mul_int,
    mpf_neg,
    mpf_pi,
    mpf_euler,
    mpf_pow_int,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    to_str,
)

from .errors import DivisionByZeroBall, DomainErrorBall

__all__ = [
    "BallReal",
    "BallComplex",
    "constant",
    "ball_pi",
    "ball_euler_gamma",
    "ball_log_pi",
]

# Radii carry ~9 significant decimal digits; that is plenty for error
# accounting and keeps bound arithmetic cheap.
RAD_PREC = 30

# Blanket cushion (1 + 2^-12) applied to every transcendental-derived bound;
# absorbs any final-ulp slack in the underlying function implementations.
_CUSHION = from_man_exp(4097, -12)


def _up(x, y):
    """x + y rounded away from the interval (upper bound for radii)."""
    return mpf_add(x, y, RAD_PREC, "c")


def _upmul(x, y):
    return mpf_mul(x, y, RAD_PREC, "c")


def _cushion(x):
    return mpf_mul(x, _CUSHION, RAD_PREC, "c")


def _ulp(x, prec, pad=1):
    """Upper bound for the rounding error of x rounded to prec bits."""
    if not x[1]:
        if x == fzero:
            return fzero
        return finf
    return from_man_exp(1, x[2] + x[3] - prec + pad)


def _exact_sub(a, b):
    """Exact difference of two finite raw mpfs."""
    if a == fzero:
        return mpf_neg(b)
    if b == fzero:
        return a
    hi = max(a[2] + a[3], b[2] + b[3])
    lo = min(a[2], b[2])
    return mpf_sub(a, b, max(hi - lo + 4, 8), "n")


def _is_special(x):
    return not x[1] and x != fzero


class BallReal:
    """A certified enclosure ``[mid - rad, mid + rad]`` of a real number."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad=fzero):
        self.mid = mid
        self.rad = rad

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "BallReal":
        return cls(from_int(n), fzero)

    @classmethod
    def from_float(cls, x: float) -> "BallReal":
        return cls(from_float(x), fzero)

    @classmethod
    def from_str(cls, s: str, prec: int) -> "BallReal":
        mid = from_str(s, prec, "n")
        if from_str(s, prec + 32, "n") == mid:
            return cls(mid, fzero)
        return cls(mid, _ulp(mid, prec))

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int) -> "BallReal":
        mid = from_rational(q.numerator, q.denominator, prec, "n")
        return cls(mid, _ulp(mid, prec))

    @classmethod
    def from_fraction_pair(cls, p: int, q: int, prec: int) -> "BallReal":
        mid = from_rational(p, q, prec, "n")
        return cls(mid, _ulp(mid, prec))

    @classmethod
    def from_endpoints(cls, lo, hi, prec: int | None = None) -> "BallReal":
        if prec is None:
            prec = max(lo[3], hi[3], RAD_PREC) + 8
        mid = mpf_mul(mpf_add(lo, hi, prec + 8, "n"), fhalf, prec, "n")
        half_width = mpf_mul(mpf_sub(hi, lo, RAD_PREC, "c"), fhalf, RAD_PREC, "c")
        rad = _up(half_width, _ulp(mid, prec, pad=2))
        return cls(mid, rad)

    @classmethod
    def zero(cls) -> "BallReal":
        return cls(fzero, fzero)

    @classmethod
    def one(cls) -> "BallReal":
        return cls(fone, fzero)

    def union(self, other: "BallReal") -> "BallReal":
        lo = min(self.lower(), other.lower(), key=_sort_key)
        hi = max(self.upper(), other.upper(), key=_sort_key)
        return BallReal.from_endpoints(lo, hi)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    def is_finite(self) -> bool:
        return not _is_special(self.mid) and not _is_special(self.rad)

    def _bound_prec(self) -> int:
        # enough bits that rounding mid +/- rad is negligible next to rad
        if not self.rad[1]:
            return max(self.mid[3], RAD_PREC) + 8
        span = (self.mid[2] + self.mid[3]) - (self.rad[2] + self.rad[3])
        return max(RAD_PREC, span + 16)

    def lower(self):
        if self.rad == fzero:
            return self.mid
        return mpf_sub(self.mid, self.rad, self._bound_prec(), "f")

    def upper(self):
        if self.rad == fzero:
            return self.mid
        return mpf_add(self.mid, self.rad, self._bound_prec(), "c")

    def mag_upper(self):
        """Upper bound for sup |x| over the ball."""
        return _up(mpf_abs(self.mid), self.rad)

    def mag_lower(self):
        """Lower bound for inf |x| over the ball (0 if the ball straddles)."""
        d = mpf_sub(mpf_abs(self.mid), self.rad, RAD_PREC, "f")
        return d if mpf_cmp(d, fzero) > 0 else fzero

    def contains_zero(self) -> bool:
        return mpf_cmp(mpf_abs(self.mid), self.rad) <= 0

    def is_strictly_positive(self) -> bool:
        return self.mid[0] == 0 and mpf_cmp(self.mid, self.rad) > 0 and self.mid != fzero

    def is_strictly_negative(self) -> bool:
        return self.mid[0] == 1 and mpf_cmp(mpf_abs(self.mid), self.rad) > 0

    def certified_sign(self) -> int | None:
        """-1 or +1 when the enclosure excludes zero, else None."""
        if self.is_strictly_positive():
            return 1
        if self.is_strictly_negative():
            return -1
        return None

    def contains_raw(self, x) -> bool:
        """Exact containment test for a raw dyadic value."""
        return mpf_cmp(mpf_abs(_exact_sub(x, self.mid)), self.rad) <= 0

    def overlaps(self, other: "BallReal") -> bool:
        gap = mpf_abs(_exact_sub(self.mid, other.mid))
        return mpf_cmp(gap, _up(self.rad, other.rad)) <= 0

    def rad_le(self, bound) -> bool:
        return mpf_cmp(self.rad, bound) <= 0

    def __repr__(self):
        return f"BallReal({to_str(self.mid, 20)} +/- {to_str(self.rad, 5)})"

    def to_str(self, dps: int) -> str:
        return to_str(self.mid, dps)

    # ------------------------------------------------------------------
    # exact operations (no rounding)
    # ------------------------------------------------------------------

    def neg(self) -> "BallReal":
        return BallReal(mpf_neg(self.mid), self.rad)

    def abs_ball(self) -> "BallReal":
        # | |x| - |m| | <= |x - m| <= r, so the same radius works.
        return BallReal(mpf_abs(self.mid), self.rad)

    def shift(self, k: int) -> "BallReal":
        return BallReal(mpf_shift(self.mid, k), mpf_shift(self.rad, k))

    def add_error(self, err) -> "BallReal":
        return BallReal(self.mid, _up(self.rad, err))

    def midpoint_ball(self) -> "BallReal":
        return BallReal(self.mid, fzero)

    # ------------------------------------------------------------------
    # rounded arithmetic
    # ------------------------------------------------------------------

    def add(self, other: "BallReal", prec: int) -> "BallReal":
        mid = mpf_add(self.mid, other.mid, prec, "n")
        return BallReal(mid, _up(_up(self.rad, other.rad), _ulp(mid, prec)))

    def sub(self, other: "BallReal", prec: int) -> "BallReal":
        mid = mpf_sub(self.mid, other.mid, prec, "n")
        return BallReal(mid, _up(_up(self.rad, other.rad), _ulp(mid, prec)))

    def add_int(self, n: int, prec: int) -> "BallReal":
        mid = mpf_add(self.mid, from_int(n), prec, "n")
        return BallReal(mid, _up(self.rad, _ulp(mid, prec)))

    def _is_wide(self) -> bool:
        if self.rad == fzero:
            return False
        if self.mid == fzero:
            return True
        return self.rad[2] + self.rad[3] >= self.mid[2] + self.mid[3] - 4

    def mul(self, other: "BallReal", prec: int) -> "BallReal":
        if self._is_wide() or other._is_wide():
            # endpoint products keep sign information that mid/rad loses
            sl, sh = self.lower(), self.upper()
            ol, oh = other.lower(), other.upper()
            pairs = ((sl, ol), (sl, oh), (sh, ol), (sh, oh))
            lo = min((mpf_mul(a, b, prec, "f") for a, b in pairs), key=_sort_key)
            hi = max((mpf_mul(a, b, prec, "c") for a, b in pairs), key=_sort_key)
            return BallReal.from_endpoints(lo, hi, prec)
        mid = mpf_mul(self.mid, other.mid, prec, "n")
        rad = _up(
            _up(
                _upmul(mpf_abs(self.mid), other.rad),
                _upmul(mpf_abs(other.mid), self.rad),
            ),
            _up(_upmul(self.rad, other.rad), _ulp(mid, prec)),
        )
        return BallReal(mid, rad)

    def mul_int(self, n: int, prec: int) -> "BallReal":
        mid = mpf_mul_int(self.mid, n, prec, "n")
        rad = _up(_upmul(self.rad, from_int(abs(n))), _ulp(mid, prec))
        return BallReal(mid, rad)

    def sq(self, prec: int) -> "BallReal":
        """Tight square: the result range is [max(0,|m|-r)^2, (|m|+r)^2]."""
        if self.rad == fzero:
            mid = mpf_mul(self.mid, self.mid, prec, "n")
            return BallReal(mid, _ulp(mid, prec))
        if mpf_cmp(mpf_shift(self.rad, 2), mpf_abs(self.mid)) >= 0:
            # wide or straddling: square the endpoint magnitudes
            lo = self.mag_lower()
            hi = _up(mpf_abs(self.mid), self.rad)
            lo2 = mpf_mul(lo, lo, prec, "f")
            hi2 = mpf_mul(hi, hi, prec, "c")
            return BallReal.from_endpoints(lo2, hi2, prec)
        mid = mpf_mul(self.mid, self.mid, prec, "n")
        rad = _up(
            _up(_upmul(mpf_shift(mpf_abs(self.mid), 1), self.rad), _upmul(self.rad, self.rad)),
            _ulp(mid, prec),
        )
        return BallReal(mid, rad)

    def div(self, other: "BallReal", prec: int) -> "BallReal":
        bm_abs = mpf_abs(other.mid)
        if mpf_cmp(bm_abs, other.rad) <= 0:
            raise DivisionByZeroBall("divisor ball contains zero")
        mid = mpf_div(self.mid, other.mid, prec, "n")
        num = _up(_upmul(mpf_abs(self.mid), other.rad), _upmul(bm_abs, self.rad))
        den = mpf_mul(bm_abs, mpf_sub(bm_abs, other.rad, RAD_PREC, "f"), RAD_PREC, "f")
        rad = _up(mpf_div(num, den, RAD_PREC, "c"), _ulp(mid, prec))
        return BallReal(mid, rad)

    def div_int(self, n: int, prec: int) -> "BallReal":
        if n == 0:
            raise DivisionByZeroBall("division by the integer zero")
        mid = mpf_div(self.mid, from_int(n), prec, "n")
        rad = _up(mpf_div(self.rad, from_int(abs(n)), RAD_PREC, "c"), _ulp(mid, prec))
        return BallReal(mid, rad)

    def recip(self, prec: int) -> "BallReal":
        return BallReal.one().div(self, prec)

    # ------------------------------------------------------------------
    # elementary functions
    # ------------------------------------------------------------------

    def sqrt(self, prec: int) -> "BallReal":
        if self.mid[0] == 1 or (self.rad != fzero and mpf_cmp(self.mid, self.rad) < 0):
            raise DomainErrorBall("sqrt requires a nonnegative ball")
        if self.rad == fzero:
            mid = mpf_sqrt(self.mid, prec, "n")
            return BallReal(mid, _cushion(_ulp(mid, prec)))
        if mpf_cmp(mpf_shift(self.rad, 4), self.mid) < 0:
            # narrow: |sqrt(x) - sqrt(m)| <= r / (2 sqrt(m - r))
            mid = mpf_sqrt(self.mid, prec, "n")
            root_lo = mpf_sqrt(mpf_sub(self.mid, self.rad, RAD_PREC, "f"), RAD_PREC, "f")
            rad = _cushion(mpf_div(self.rad, mpf_shift(root_lo, 1), RAD_PREC, "c"))
            return BallReal(mid, _up(rad, _ulp(mid, prec, pad=2)))
        lo = mpf_sqrt(self.lower(), prec, "f")
        hi = mpf_sqrt(self.upper(), prec, "c")
        return _ball_from_monotone(lo, hi, prec)

    def exp(self, prec: int) -> "BallReal":
        if self.rad == fzero:
            mid = mpf_exp(self.mid, prec, "n")
            return BallReal(mid, _cushion(_ulp(mid, prec, pad=2)))
        if mpf_cmp(self.rad, fhalf) <= 0:
            # derivative bound: |e^x - e^m| <= e^m (e^r - 1) <= e^m r (1 + r)
            mid = mpf_exp(self.mid, prec, "n")
            grow = _up(fone, _cushion(self.rad))
            rad = _cushion(_upmul(_upmul(mpf_abs(mid), self.rad), grow))
            return BallReal(mid, _up(rad, _ulp(mid, prec, pad=2)))
        lo = mpf_exp(self.lower(), prec, "f")
        hi = mpf_exp(self.upper(), prec, "c")
        return _ball_from_monotone(lo, hi, prec, transcendental=True)

    def log(self, prec: int) -> "BallReal":
        if self.mid[0] == 1 or mpf_cmp(self.mid, self.rad) <= 0 or self.mid == fzero:
            raise DomainErrorBall("log requires a strictly positive ball")
        if self.rad == fzero:
            mid = mpf_log(self.mid, prec, "n")
            return BallReal(mid, _cushion(_ulp(mid, prec, pad=2)))
        if mpf_cmp(mpf_shift(self.rad, 4), self.mid) < 0:
            # narrow: |log(x) - log(m)| <= r / (m - r)
            mid = mpf_log(self.mid, prec, "n")
            denom = mpf_sub(self.mid, self.rad, RAD_PREC, "f")
            rad = _cushion(mpf_div(self.rad, denom, RAD_PREC, "c"))
            return BallReal(mid, _up(rad, _ulp(mid, prec, pad=2)))
        lo = mpf_log(self.lower(), prec, "f")
        hi = mpf_log(self.upper(), prec, "c")
        return _ball_from_monotone(lo, hi, prec, transcendental=True)

    def cos_sin(self, prec: int) -> tuple["BallReal", "BallReal"]:
        if self.rad != fzero and mpf_cmp(self.rad, from_man_exp(1, -7)) > 0:
            return self._cos_sin_wide()
        c, s = mpf_cos_sin(self.mid, prec, "n")
        err = _up(_cushion(self.rad), _ulp(fone, prec, pad=2))
        return (
            _clamp_unit(BallReal(c, err), prec),
            _clamp_unit(BallReal(s, err), prec),
        )

    def _cos_sin_wide(self) -> tuple["BallReal", "BallReal"]:
        """Hull of cos/sin over a wide ball by rigorous subdivision."""
        unit = BallReal(fzero, _up(fone, from_man_exp(1, -20)))
        r_f = mpf_cmp(self.rad, from_int(4)) > 0
        if r_f:
            return unit, unit
        pieces = 16
        wp = 64
        step = mpf_div(mpf_shift(self.rad, 1), from_int(pieces), RAD_PREC + 20, "c")
        half_step = _up(mpf_shift(step, -1), _ulp(step, RAD_PREC, pad=4))
        lo = self.lower()
        cos_vals = []
        sin_vals = []
        for i in range(pieces):
            offset = mpf_mul(step, from_int(2 * i + 1), RAD_PREC + 20, "n")
            m_i = mpf_add(lo, mpf_shift(offset, -1), RAD_PREC + 20, "n")
            c, s = mpf_cos_sin(m_i, wp, "n")
            cos_vals.append(c)
            sin_vals.append(s)
        pad = _up(half_step, from_man_exp(1, -50))

        def hull(vals):
            lo_v = min(vals, key=_sort_key)
            hi_v = max(vals, key=_sort_key)
            ball = BallReal.from_endpoints(
                mpf_sub(lo_v, pad, RAD_PREC + 20, "f"),
                mpf_add(hi_v, pad, RAD_PREC + 20, "c"),
                RAD_PREC + 20,
            )
            return _clamp_interval(ball)

        return hull(cos_vals), hull(sin_vals)

    def cos(self, prec: int) -> "BallReal":
        return self.cos_sin(prec)[0]

    def sin(self, prec: int) -> "BallReal":
        return self.cos_sin(prec)[1]

    def atan(self, prec: int) -> "BallReal":
        mid = mpf_atan(self.mid, prec, "n")
        rad = _up(_cushion(self.rad), _ulp(mid, prec, pad=2))
        return BallReal(mid, rad)

    def pow_int(self, n: int, prec: int) -> "BallReal":
        if n == 0:
            return BallReal.one()
        if n < 0:
            return BallReal.one().div(self.pow_int(-n, prec), prec)
        result = None
        base = self
        k = n
        while k:
            if k & 1:
                result = base if result is None else result.mul(base, prec)
            k >>= 1
            if k:
                base = base.sq(prec) if base.mid[0] == 0 else base.mul(base, prec)
        return result

    def pow(self, other: "BallReal", prec: int) -> "BallReal":
        return self.log(prec).mul(other, prec).exp(prec)


def _sort_key(x):
    # mpf_cmp-compatible total order for min/max over raw values
    import functools

    return _CmpKey(x)


class _CmpKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return mpf_cmp(self.v, other.v) < 0


def _ball_from_monotone(lo, hi, prec, transcendental=False):
    mid = mpf_mul(mpf_add(lo, hi, prec + 8, "n"), fhalf, prec, "n")
    half = mpf_mul(mpf_sub(hi, lo, RAD_PREC, "c"), fhalf, RAD_PREC, "c")
    rad = _up(half, _ulp(mid, prec, pad=2))
    if transcendental:
        rad = _cushion(rad)
    return BallReal(mid, rad)


def _clamp_unit(ball: BallReal, prec: int) -> BallReal:
    if mpf_cmp(ball.rad, fone) >= 0:
        return BallReal(fzero, _up(fone, _ulp(fone, RAD_PREC)))
    return ball


def _clamp_interval(ball: BallReal) -> BallReal:
    """Intersect an enclosure with [-1, 1]."""
    neg_one = mpf_neg(fone)
    lo = ball.lower()
    hi = ball.upper()
    lo = lo if mpf_cmp(lo, neg_one) > 0 else neg_one
    hi = hi if mpf_cmp(hi, fone) < 0 else fone
    return BallReal.from_endpoints(lo, hi, RAD_PREC + 20)


class BallComplex:
    """Rectangular complex enclosure: independent real and imaginary balls."""

    __slots__ = ("re", "im")

    def __init__(self, re: BallReal, im: BallReal | None = None):
        self.re = re
        self.im = im if im is not None else BallReal.zero()

    @classmethod
    def from_int(cls, n: int) -> "BallComplex":
        return cls(BallReal.from_int(n))

    @classmethod
    def from_real(cls, re: BallReal) -> "BallComplex":
        return cls(re, BallReal.zero())

    @classmethod
    def from_complex(cls, z: complex) -> "BallComplex":
        return cls(BallReal.from_float(z.real), BallReal.from_float(z.imag))

    def __repr__(self):
        return f"BallComplex({self.re!r}, {self.im!r})"

    def is_finite(self) -> bool:
        return self.re.is_finite() and self.im.is_finite()

    def rad_max(self):
        return self.re.rad if mpf_cmp(self.re.rad, self.im.rad) >= 0 else self.im.rad

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def overlaps(self, other: "BallComplex") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def neg(self) -> "BallComplex":
        return BallComplex(self.re.neg(), self.im.neg())

    def conj(self) -> "BallComplex":
        return BallComplex(self.re, self.im.neg())

    def add(self, other: "BallComplex", prec: int) -> "BallComplex":
        return BallComplex(self.re.add(other.re, prec), self.im.add(other.im, prec))

    def sub(self, other: "BallComplex", prec: int) -> "BallComplex":
        return BallComplex(self.re.sub(other.re, prec), self.im.sub(other.im, prec))

    def add_real(self, other: BallReal, prec: int) -> "BallComplex":
        return BallComplex(self.re.add(other, prec), self.im)

    def mul(self, other: "BallComplex", prec: int) -> "BallComplex":
        a, b, c, d = self.re, self.im, other.re, other.im
        re = a.mul(c, prec).sub(b.mul(d, prec), prec)
        im = a.mul(d, prec).add(b.mul(c, prec), prec)
        return BallComplex(re, im)

    def mul_real(self, other: BallReal, prec: int) -> "BallComplex":
        return BallComplex(self.re.mul(other, prec), self.im.mul(other, prec))

    def mul_int(self, n: int, prec: int) -> "BallComplex":
        return BallComplex(self.re.mul_int(n, prec), self.im.mul_int(n, prec))

    def mul_i(self) -> "BallComplex":
        """Multiply by the imaginary unit (exact)."""
        return BallComplex(self.im.neg(), self.re)

    def abs_sq(self, prec: int) -> BallReal:
        return self.re.sq(prec).add(self.im.sq(prec), prec)

    def abs_upper(self):
        """Raw upper bound for |z| over the box."""
        m = self.abs_sq(RAD_PREC + 8)
        return mpf_sqrt(m.mag_upper(), RAD_PREC, "c")

    def abs_ball(self, prec: int) -> BallReal:
        return self.abs_sq(prec).sqrt(prec)

    def div(self, other: "BallComplex", prec: int) -> "BallComplex":
        den = other.abs_sq(prec)
        if den.contains_zero() or den.mid[0] == 1:
            raise DivisionByZeroBall("complex divisor ball contains zero")
        num = self.mul(other.conj(), prec)
        return BallComplex(num.re.div(den, prec), num.im.div(den, prec))

    def div_real(self, other: BallReal, prec: int) -> "BallComplex":
        return BallComplex(self.re.div(other, prec), self.im.div(other, prec))

    def div_int(self, n: int, prec: int) -> "BallComplex":
        return BallComplex(self.re.div_int(n, prec), self.im.div_int(n, prec))

    def recip(self, prec: int) -> "BallComplex":
        return BallComplex.from_int(1).div(self, prec)

    def exp(self, prec: int) -> "BallComplex":
        r = self.re.exp(prec)
        c, s = self.im.cos_sin(prec)
        return BallComplex(r.mul(c, prec), r.mul(s, prec))

    def log(self, prec: int) -> "BallComplex":
        mod2 = self.abs_sq(prec)
        re = mod2.log(prec).shift(-1)
        im = atan2_ball(self.im, self.re, prec)
        return BallComplex(re, im)

    def sqrt(self, prec: int) -> "BallComplex":
        return self.log(prec).shift(-1).exp(prec)

    def shift(self, k: int) -> "BallComplex":
        return BallComplex(self.re.shift(k), self.im.shift(k))

    def pow_int(self, n: int, prec: int) -> "BallComplex":
        if n == 0:
            return BallComplex.from_int(1)
        if n < 0:
            return BallComplex.from_int(1).div(self.pow_int(-n, prec), prec)
        result = None
        base = self
        k = n
        while k:
            if k & 1:
                result = base if result is None else result.mul(base, prec)
            k >>= 1
            if k:
                base = base.mul(base, prec)
        return result

    def add_error(self, err) -> "BallComplex":
        return BallComplex(self.re.add_error(err), self.im.add_error(err))


def atan2_ball(y: BallReal, x: BallReal, prec: int) -> BallReal:
    """Certified principal argument of x + iy off the branch cut."""
    if x.is_strictly_positive():
        return y.div(x, prec).atan(prec)
    if y.is_strictly_positive():
        half_pi = ball_pi(prec).shift(-1)
        return half_pi.sub(x.div(y, prec).atan(prec), prec)
    if y.is_strictly_negative():
        half_pi = ball_pi(prec).shift(-1)
        return half_pi.neg().sub(x.div(y, prec).atan(prec), prec)
    raise DomainErrorBall("argument ball touches the branch cut or zero")


# ----------------------------------------------------------------------
# constants
# ----------------------------------------------------------------------


def ball_pi(prec: int) -> BallReal:
    mid = mpf_pi(prec, "n")
    return BallReal(mid, _ulp(mid, prec, pad=2))


def ball_euler_gamma(prec: int) -> BallReal:
    mid = mpf_euler(prec, "n")
    return BallReal(mid, _ulp(mid, prec, pad=2))


def ball_log_pi(prec: int) -> BallReal:
    return ball_pi(prec + 8).log(prec)


_CONSTANTS = {
    "pi": ball_pi,
    "euler_gamma": ball_euler_gamma,
    "log_pi": ball_log_pi,
}


def constant(name: str, prec: int) -> BallReal:
    """Named constant enclosure with radius below ``2^(4 - prec)``."""
    try:
        fn = _CONSTANTS[name]
    except KeyError:
        raise DomainErrorBall(f"unknown constant {name!r}") from None
    return fn(prec)
