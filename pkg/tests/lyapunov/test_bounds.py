"""Test ``lyapunov.bounds`` module."""

import numpy as np
import pytest

from loglip_sde.lyapunov import SINE_SERIES_CONSTANT, sine_series_bound_check, stroock_bound


def test_stroock_bound_value():
    """d = 1, A = 1, B = 0, T = 1, R = 3 gives 2 exp(-4.5)."""
    assert stroock_bound(1.0, 0.0, 1.0, 3.0, 1) == pytest.approx(2 * np.exp(-4.5))
    assert stroock_bound(1.0, 0.0, 1.0, 3.0, 1) == pytest.approx(0.02222, abs=1e-5)


def test_stroock_bound_without_noise():
    assert stroock_bound(0.0, 1.0, 1.0, 3.0, 2) == 0.0


def test_stroock_bound_drift_reach():
    with pytest.raises(ValueError, match=r"requires d\*\*0.5 \* B \* T < R"):
        stroock_bound(1.0, 2.0, 1.0, 2.0, 1)


def test_sine_series_bound():
    theta = np.geomspace(1e-6, 0.36, 100)

    report = sine_series_bound_check(theta, K=100000)

    assert report.within_bound
    assert report.max_ratio <= SINE_SERIES_CONSTANT
    assert report.bound_constant == pytest.approx(2 * (np.pi**2 / 2 + 1))
    assert len(report.ratio) == 100


@pytest.mark.parametrize(
    "theta, K, tolerance, match",
    [
        ([0.5], 100, None, r"every theta must lie in \(0, 1/e\)"),
        ([], 100, None, "theta_grid is empty"),
        ([0.1], 10, 0.01, "tail bound"),
    ],
)
def test_sine_series_bound_invalid(theta, K, tolerance, match):
    with pytest.raises(ValueError, match=match):
        sine_series_bound_check(theta, K, tolerance)
