"""Test ``lyapunov.exit_profile`` module."""

import numpy as np
import pytest
from scipy import integrate

from loglip_sde.lyapunov import exit_profile


def test_profile_is_c1_at_junctions():
    profile = exit_profile(0.25)
    h = 1e-7

    for s in profile.junctions:
        left, right = profile.f(s - h), profile.f(s + h)
        assert right == pytest.approx(left, abs=1e-6)
        slope_left = (profile.f(s) - profile.f(s - h)) / h
        slope_right = (profile.f(s + h) - profile.f(s)) / h
        assert slope_right == pytest.approx(slope_left, abs=1e-5)


def test_profile_pieces():
    profile = exit_profile(0.25)

    assert profile.f(0.5) == pytest.approx(-0.5 * np.log(0.5))
    assert profile.f(3.0) == pytest.approx(3.0 * np.log(3.0))
    assert profile.f(0.0) == 0.0


def test_psi_matches_direct_quadrature():
    profile = exit_profile(0.25)
    direct, _ = integrate.quad(
        lambda s: 1.0 / (float(profile.f(s)) + 1.0), 0.0, 5.0, points=[0.75, 1.25], epsabs=1e-12, epsrel=1e-12
    )

    assert profile.psi(5.0) == pytest.approx(direct, rel=1e-8)


def test_psi_increases():
    profile = exit_profile()
    values = [profile.psi(R) for R in (0.0, 0.5, 1.0, 2.0, 10.0, 1e6)]

    assert values[0] == 0.0
    assert np.all(np.diff(values) > 0)


@pytest.mark.parametrize("delta0", [0.0, 0.5, -0.1])
def test_invalid_delta0(delta0):
    with pytest.raises(ValueError, match="delta0 must lie in"):
        exit_profile(delta0)


def test_negative_radius():
    with pytest.raises(ValueError, match="R must be finite and non-negative"):
        exit_profile().psi(-1.0)
