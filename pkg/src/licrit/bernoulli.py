"""Exact Bernoulli data, cached as balls at the precisions in use."""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .ball import BallReal

_frac_cache: dict[int, Fraction] = {}
_ball_cache: dict[tuple[str, int, int], BallReal] = {}


def bernoulli_fraction(n: int) -> Fraction:
    """Exact Bernoulli number B_n."""
    try:
        return _frac_cache[n]
    except KeyError:
        p, q = mpmath.bernfrac(n)
        frac = Fraction(int(p), int(q))
        _frac_cache[n] = frac
        return frac


def bernoulli_ball(n: int, prec: int) -> BallReal:
    key = ("b", n, prec)
    try:
        return _ball_cache[key]
    except KeyError:
        ball = BallReal.from_fraction(bernoulli_fraction(n), prec)
        _ball_cache[key] = ball
        return ball


def bernoulli_over_factorial(n: int, prec: int) -> BallReal:
    """B_n / n! as a ball."""
    key = ("bf", n, prec)
    try:
        return _ball_cache[key]
    except KeyError:
        frac = bernoulli_fraction(n) / math.factorial(n)
        ball = BallReal.from_fraction(frac, prec)
        _ball_cache[key] = ball
        return ball


def stirling_coefficient(k: int, prec: int) -> BallReal:
    """B_{2k} / ((2k)(2k-1)) as a ball, for the log-gamma series."""
    key = ("sc", k, prec)
    try:
        return _ball_cache[key]
    except KeyError:
        frac = bernoulli_fraction(2 * k) / (2 * k * (2 * k - 1))
        ball = BallReal.from_fraction(frac, prec)
        _ball_cache[key] = ball
        return ball


def digamma_coefficient(k: int, prec: int) -> BallReal:
    """B_{2k} / (2k) as a ball, for the digamma series."""
    key = ("dc", k, prec)
    try:
        return _ball_cache[key]
    except KeyError:
        frac = bernoulli_fraction(2 * k) / (2 * k)
        ball = BallReal.from_fraction(frac, prec)
        _ball_cache[key] = ball
        return ball
