"""Test ``sde.lifetime`` module."""

import numpy as np
import pytest

from loglip_sde.sde import detect_lifetime


def test_blow_up_detected(generate_field):
    """x' = x log(x)**2 from e explodes at t = 1."""
    report = detect_lifetime(generate_field("log_sq_growth"), [np.e], 1.0, [1e3, 1e4, 1e5, 1e6], n=4096)

    assert report.exploded
    assert 0.9 <= report.lifetime <= 1.05
    taus = [row.tau for row in report.hitting]
    assert taus == sorted(taus)


def test_survival(generate_field):
    """x' = x log x from e is exp(exp(t)), e**e at t = 1."""
    report = detect_lifetime(generate_field("log_growth"), [np.e], 1.0, [1e3, 1e4, 1e5, 1e6], n=4096)

    assert not report.exploded
    assert report.lifetime is None
    assert report.lifetime_label == ">= 1.0"
    assert report.final_state[0] == pytest.approx(np.exp(np.e), rel=1e-2)
    assert all(row.tau is None for row in report.hitting)


def test_noisy_survival(generate_field):
    report = detect_lifetime(
        generate_field("log_growth", diffusion=1.0), [1.0], 1.0, [1e3, 1e4, 1e5, 1e6], n=1024, epsilon=0.1, seed=3
    )

    assert not report.exploded


@pytest.mark.parametrize(
    "ladder, match",
    [
        ([1e3, 1e4, 1e5], "at least 4 rungs"),
        ([1e3, 1e5, 1e4, 1e6], "strictly increasing"),
        ([0.5, 1e4, 1e5, 1e6], "above 1"),
    ],
)
def test_invalid_ladder(generate_field, ladder, match):
    with pytest.raises(ValueError, match=match):
        detect_lifetime(generate_field("log_growth"), [np.e], 1.0, ladder, n=16)
