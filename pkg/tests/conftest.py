"""Shared fixtures and independent oracle helpers."""

import numpy as np
import pytest

from nsac1d.model import GasLaw, State
from nsac1d.riemann import build_wave_fan, hugoniot_locus


@pytest.fixture(scope="session")
def law14():
    return GasLaw(1.4)


def shock_of_strength(law, anchor, family, delta, lo_frac=1e-6, hi_frac=0.95):
    """Lax shock through ``anchor`` with Euclidean strength ``delta``.

    Bisection on the downstream volume offset; the strength grows
    monotonically from 0 as the offset grows, so this is a guaranteed
    oracle for generating waves of prescribed size.
    """
    v0 = anchor.v

    def strength(frac):
        return hugoniot_locus(law, anchor, family, v0 * (1.0 - frac)).strength

    lo, hi = lo_frac, hi_frac
    if strength(hi) < delta:
        raise ValueError(f"requested strength {delta} out of range")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if strength(mid) < delta:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return hugoniot_locus(law, anchor, family, v0 * (1.0 - 0.5 * (lo + hi)))


def fan_of_strength(law, delta, star=None, x2_init=0.0, x1_init=1.0):
    """Colliding two-shock fan whose incoming strengths both equal delta.

    Built by planting the common upstream middle state and walking the
    same volume offset down both Hugoniot branches.
    """
    star = star or State.lagrangian(1.0, 0.0)
    w2 = shock_of_strength(law, star, 2, delta)
    w1 = shock_of_strength(law, star, 1, delta)
    return build_wave_fan(law, w2.left, w1.right, x2_init=x2_init, x1_init=x1_init)
