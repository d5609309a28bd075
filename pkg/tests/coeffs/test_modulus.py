"""Test ``coeffs.modulus`` module."""

import pytest

from loglip_sde.coeffs import estimate_growth, estimate_modulus, linear_field, log_growth_field, sine_series_field


def test_linear_drift_modulus():
    """For b = 2x the ratio is 2 / log(1/|x-y|), largest at the distance 1/e."""
    c_sigma, c_drift = estimate_modulus(linear_field(2.0), pair_count=10000, seed=0)

    assert 1.9 < c_drift <= 2.0 + 1e-9
    assert c_sigma == 0.0


def test_modulus_is_deterministic_and_monotone():
    field = sine_series_field(K_terms=100)

    first = estimate_modulus(field, pair_count=2000, seed=3)
    again = estimate_modulus(field, pair_count=2000, seed=3)
    larger = estimate_modulus(field, pair_count=4000, seed=3)

    assert first == again
    assert larger[1] >= first[1]


def test_log_growth_constants():
    """|x| log|x| growth gives a bounded drift ratio."""
    c_sigma, c_drift = estimate_growth(log_growth_field(1), probe_count=5000, seed=0)

    assert 0.0 < c_drift <= 1.0
    assert c_sigma == 0.0


@pytest.mark.parametrize("pair_count", [0, -1])
def test_invalid_pair_count(pair_count):
    with pytest.raises(ValueError, match="pair_count must be positive"):
        estimate_modulus(linear_field(1.0), pair_count=pair_count, seed=0)
