"""Tests for the ball-arithmetic foundation.

Containment oracles are mpmath evaluations at (at least) doubled precision;
sampled points inside input balls must map into output balls.
"""

from __future__ import annotations

import random

import mpmath as mp
import pytest
from mpmath.libmp import fzero, mpf_cmp, mpf_shift

from licrit.ball import BallComplex, BallReal, ball_pi, constant
from licrit.context import PrecisionContext, certify
from licrit.errors import DivisionByZeroBall, DomainErrorBall, PrecisionExhausted

from helpers import contains_mp, rad_float, working_dps


def test_add_exact_integers():
    s = BallReal.from_int(1).add(BallReal.from_int(2), 64)
    assert contains_mp(s, 3)
    assert rad_float(s) <= 2.0 ** -60


def test_mul_zero_annihilates():
    x = BallReal.from_str("87314.25", 64)
    z = BallReal.zero().mul(x, 64)
    assert z.mid == fzero and z.rad == fzero


def test_div_inexact_rational_has_positive_radius():
    d = BallReal.from_int(1).div(BallReal.from_int(3), 64)
    with working_dps(50):
        assert contains_mp(d, mp.mpf(1) / 3)
    assert d.rad != fzero


def test_div_by_straddling_ball_raises():
    denom = BallReal.from_str("0.001", 64).add_error(mp.mpf("0.01")._mpf_)
    with pytest.raises(DivisionByZeroBall):
        BallReal.from_int(1).div(denom, 64)


def test_exp_of_zero_contains_one():
    e = BallReal.zero().exp(128)
    assert contains_mp(e, 1)


def test_sqrt_four_contains_two():
    r = BallReal.from_int(4).sqrt(128)
    assert contains_mp(r, 2)


def test_log_of_e_ball_contains_one():
    # oracle: independent high-precision evaluation at doubled precision
    with working_dps(100):
        e_ball = BallReal(mp.e._mpf_, mp.mpf("1e-40")._mpf_)
        out = e_ball.log(128)
        assert contains_mp(out, mp.log(mp.mpf(e_ball.mid)))
        assert abs(mp.mpf(out.mid) - 1) < mp.mpf("1e-39")


def test_log_requires_positive_ball():
    with pytest.raises(DomainErrorBall):
        BallReal.from_int(0).log(64)
    with pytest.raises(DomainErrorBall):
        BallReal.from_int(-3).log(64)


@pytest.mark.parametrize(
    "name,oracle",
    [
        ("pi", lambda: +mp.pi),
        ("euler_gamma", lambda: +mp.euler),
        ("log_pi", lambda: mp.log(mp.pi)),
    ],
)
def test_constants_against_doubled_precision_oracle(name, oracle):
    for bits in (64, 128, 256):
        ball = constant(name, bits)
        with working_dps(2 * int(bits * 0.30103) + 10):
            assert contains_mp(ball, oracle())
        assert rad_float(ball) <= 2.0 ** (4 - bits)


def test_unknown_constant_rejected():
    with pytest.raises(DomainErrorBall):
        constant("feigenbaum", 64)


def _sample_points(ball: BallReal, rng: random.Random, count: int = 5):
    m = mp.mpf(ball.mid)
    r = mp.mpf(ball.rad)
    pts = [m, m + r, m - r]
    pts += [m + r * mp.mpf(rng.uniform(-1, 1)) for _ in range(count)]
    return pts


@pytest.mark.parametrize("op", ["add", "sub", "mul", "div"])
def test_containment_monotonicity_random(op):
    rng = random.Random(20240 + hash(op) % 1000)
    prec = 96
    with working_dps(80):
        for _ in range(40):
            am = mp.mpf(rng.uniform(-40, 40))
            bm = mp.mpf(rng.uniform(-40, 40))
            ar = mp.mpf(rng.uniform(0, 0.5))
            br = mp.mpf(rng.uniform(0, 0.5))
            if op == "div" and abs(bm) < 2 * br + mp.mpf("0.1"):
                bm += 5
            a = BallReal(am._mpf_, ar._mpf_)
            b = BallReal(bm._mpf_, br._mpf_)
            out = getattr(a, op)(b, prec)
            for x in _sample_points(a, rng):
                for y in _sample_points(b, rng):
                    exact = {
                        "add": x + y,
                        "sub": x - y,
                        "mul": x * y,
                        "div": x / y,
                    }[op]
                    assert contains_mp(out, exact), (op, x, y)


@pytest.mark.parametrize("fn", ["exp", "log", "sqrt", "sin", "cos", "atan"])
def test_elementary_containment_random(fn):
    rng = random.Random(777)
    prec = 96
    with working_dps(80):
        for _ in range(30):
            if fn in ("log", "sqrt"):
                am = mp.mpf(rng.uniform(0.3, 30))
                ar = mp.mpf(rng.uniform(0, 0.05))
            else:
                am = mp.mpf(rng.uniform(-10, 10))
                ar = mp.mpf(rng.uniform(0, 0.5))
            a = BallReal(am._mpf_, ar._mpf_)
            out = getattr(a, fn)(prec)
            for x in _sample_points(a, rng):
                exact = getattr(mp, fn)(x)
                assert contains_mp(out, exact), (fn, x)


def test_complex_containment_random():
    rng = random.Random(4242)
    prec = 96
    with working_dps(80):
        for _ in range(25):
            a = BallComplex(
                BallReal(mp.mpf(rng.uniform(-5, 5))._mpf_, mp.mpf(rng.uniform(0, 0.1))._mpf_),
                BallReal(mp.mpf(rng.uniform(-5, 5))._mpf_, mp.mpf(rng.uniform(0, 0.1))._mpf_),
            )
            b = BallComplex(
                BallReal(mp.mpf(rng.uniform(1, 5))._mpf_, mp.mpf(rng.uniform(0, 0.05))._mpf_),
                BallReal(mp.mpf(rng.uniform(-2, 2))._mpf_, mp.mpf(rng.uniform(0, 0.05))._mpf_),
            )
            za = mp.mpc(mp.mpf(a.re.mid), mp.mpf(a.im.mid))
            zb = mp.mpc(mp.mpf(b.re.mid), mp.mpf(b.im.mid))
            for op, exact in [
                ("mul", za * zb),
                ("div", za / zb),
                ("add", za + zb),
            ]:
                out = getattr(a, op)(b, prec)
                assert out.re.contains_raw(mp.mpf(exact.real)._mpf_)
                assert out.im.contains_raw(mp.mpf(exact.imag)._mpf_)
            ez = a.exp(prec)
            exact = mp.exp(za)
            assert ez.re.contains_raw(mp.mpf(exact.real)._mpf_)
            assert ez.im.contains_raw(mp.mpf(exact.imag)._mpf_)


def test_radius_growth_regression():
    # doubling working_bits must not inflate the radius of a rerun
    def computation(bits):
        x = BallReal.from_str("1.7724538509", bits)
        return x.exp(bits).log(bits).mul(x, bits).sqrt(bits)

    r1 = computation(128)
    r2 = computation(256)
    assert rad_float(r2) <= rad_float(r1) * 1.01


def test_determinism_bit_identical():
    def computation():
        x = BallReal.from_str("0.125", 192)
        y = x.exp(192).mul(ball_pi(192), 192)
        return y.sin(192)

    a = computation()
    b = computation()
    assert a.mid == b.mid and a.rad == b.rad


def test_certify_converges_on_pi():
    ctx = PrecisionContext.make(64, "1e-50")
    result = certify(lambda c: ball_pi(c.working_bits), ctx)
    with working_dps(80):
        assert contains_mp(result, mp.pi)
    assert rad_float(result) <= 1e-50


def test_certify_exhausts_on_stuck_radius():
    stuck = BallReal(BallReal.from_int(1).mid, BallReal.from_int(1).mid)
    ctx = PrecisionContext.make(64, "1e-10", max_bits=128)
    with pytest.raises(PrecisionExhausted) as info:
        certify(lambda c: stuck, ctx)
    assert info.value.result is not None
    assert mpf_cmp(info.value.result.rad, fzero) > 0


def test_context_invariants():
    with pytest.raises(ValueError):
        PrecisionContext.make(32, "1e-10")
    with pytest.raises(ValueError):
        PrecisionContext.make(128, "1e-10", max_bits=64)


def test_abs_and_sq_straddling():
    ball = BallReal(mp.mpf("-0.002")._mpf_, mp.mpf("0.01")._mpf_)
    assert ball.abs_ball().contains_raw(mp.mpf("0.002")._mpf_)
    sq = ball.sq(64)
    for x in ("0", "0.000004", "0.000144", "0.00006"):
        assert sq.contains_raw(mp.mpf(x)._mpf_)
    assert not sq.contains_raw(mp.mpf("0.000145")._mpf_)


def test_pow_int_matches_oracle():
    with working_dps(80):
        x = BallReal.from_str("1.31", 128)
        out = x.pow_int(7, 128)
        assert contains_mp(out, mp.mpf("1.31") ** 7)
        z = BallComplex(BallReal.from_str("0.4", 128), BallReal.from_str("1.1", 128))
        zz = z.pow_int(5, 128)
        exact = mp.mpc("0.4", "1.1") ** 5
        assert zz.re.contains_raw(mp.mpf(exact.real)._mpf_)
        assert zz.im.contains_raw(mp.mpf(exact.imag)._mpf_)


def test_shift_is_exact():
    x = BallReal.from_str("3.75", 64)
    y = x.shift(-3)
    assert mpf_cmp(y.mid, mpf_shift(x.mid, -3)) == 0
    assert y.rad == mpf_shift(x.rad, -3)
