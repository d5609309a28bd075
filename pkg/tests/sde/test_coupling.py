"""Test ``sde.coupling`` module."""

import numpy as np
import pytest

from loglip_sde.exceptions import NumericalFailure
from loglip_sde.sde import coupled_pair, expectation_gap, refinement_gaps, stability_probability
from loglip_sde.sde.coupling import non_increasing_within, sup_gap


def test_coupled_pair_with_additive_noise(unit_brownian_field, generate_driver):
    first, second = coupled_pair(unit_brownian_field, 0.5, generate_driver(n=32), [0.0], [0.25])

    np.testing.assert_allclose(second.states - first.states, 0.25, atol=1e-12)


def test_stability_of_linear_flow(generate_field):
    """Offsets grow to about delta * e under x' = x with additive noise."""
    field = generate_field("linear", matrix=1.0, diffusion=1.0)

    report = stability_probability(field, 0.1, [0.0], [0.3, 0.1, 0.0], 0.5, trials=100, n=64, seed=0)

    assert [row.probability for row in report.rows] == [1.0, 0.0, 0.0]
    assert report.non_increasing


def test_stability_zero_offset_never_exceeds(generate_field):
    field = generate_field("sine_series", K_terms=32, diffusion_scale=1.0)

    report = stability_probability(field, 0.5, [0.0, 0.0], [0.2, 0.0], 0.1, trials=50, n=32, seed=1)

    assert report.rows[-1].exceed == 0
    assert report.rows[-1].stderr == 0.0


@pytest.mark.parametrize(
    "ladder, match",
    [
        ([], "non-empty"),
        ([0.1, 0.3], "strictly decreasing"),
        ([0.1, -0.1], "non-negative"),
    ],
)
def test_invalid_delta_ladder(unit_brownian_field, ladder, match):
    with pytest.raises(ValueError, match=match):
        stability_probability(unit_brownian_field, 1.0, [0.0], ladder, 0.5, 10, 8, 0)


def test_expectation_gap(generate_field):
    field = generate_field("linear", matrix=-1.0, diffusion=1.0)

    report = expectation_gap(field, 0.2, [0.0], [0.5, 0.1, 0.0], trials=200, n=32, seed=0)

    gaps = [row.mean_gap for row in report.rows]
    assert gaps[-1] == 0.0
    assert gaps[0] > gaps[1] > 0
    assert report.non_increasing


def test_refinement_gaps_decrease(generate_field):
    field = generate_field("sine_series", K_terms=32, diffusion_scale=0.5)

    report = refinement_gaps(field, 1.0, [0.3, 0.3], [8, 32, 128], trials=50, seed=2)

    assert report.decreasing
    assert [row.n for row in report.rows] == [8, 32, 128]


def test_sup_gap_with_explosion():
    a = np.zeros((2, 3, 1))
    b = np.zeros((2, 3, 1))
    b[0, 2] = np.inf
    b[1, 1] = 0.5

    np.testing.assert_array_equal(sup_gap(a, b), [np.inf, 0.5])


def test_non_increasing_within_standard_errors():
    assert non_increasing_within(np.array([0.5, 0.52]), np.array([0.02, 0.02]))
    assert not non_increasing_within(np.array([0.1, 0.5]), np.array([0.01, 0.01]))


def test_expectation_gap_of_an_exploding_field(generate_field):
    """x log^2 x from 10 blows up near t = 1 / log 10."""
    field = generate_field("log_sq_growth")

    with pytest.raises(NumericalFailure, match="coupled run exploded") as excinfo:
        expectation_gap(field, 0.1, [10.0], [0.1], trials=10, n=256, seed=0)

    assert excinfo.value.diagnostic["trials"][0] == 0
