"""Shared helpers for comparing enclosures against mpmath oracles."""

from __future__ import annotations

import mpmath as mp

from licrit.ball import BallComplex, BallReal


def contains_mp(ball: BallReal, value) -> bool:
    """True when the mpmath value lies inside the real ball."""
    return ball.contains_raw(mp.mpf(value)._mpf_)


def contains_mpc(ball: BallComplex, value) -> bool:
    value = mp.mpc(value)
    return ball.re.contains_raw(mp.mpf(value.real)._mpf_) and ball.im.contains_raw(
        mp.mpf(value.imag)._mpf_
    )


def rad_float(ball) -> float:
    if isinstance(ball, BallComplex):
        return max(rad_float(ball.re), rad_float(ball.im))
    return float(mp.mpf(ball.rad))


def mid_mp(ball: BallReal):
    return mp.mpf(ball.mid)


class working_dps:
    """Temporarily raise mpmath's working precision."""

    def __init__(self, dps: int):
        self.dps = dps
        self._old = None

    def __enter__(self):
        self._old = mp.mp.dps
        mp.mp.dps = self.dps
        return mp

    def __exit__(self, *exc):
        mp.mp.dps = self._old
        return False
