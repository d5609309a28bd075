"""Test ``ldp.montecarlo`` module."""

import numpy as np
import pytest

from loglip_sde.ldp import binomial_band, estimate_from_counts, mc_log_prob


def test_binomial_band():
    lo, hi = binomial_band(5, 100)

    assert lo == pytest.approx(0.01643, abs=1e-4)
    assert hi == pytest.approx(0.11283, abs=1e-4)


def test_no_hits_is_below_resolution():
    estimate = estimate_from_counts(0.1, 0, 1000)

    assert estimate.flag == "below resolution"
    assert estimate.eps_log_p is None
    assert estimate.lo is None
    assert estimate.hi == pytest.approx(0.1 * np.log(1 - 0.025 ** (1 / 1000)), rel=1e-6)


def test_always_event_is_certain(unit_brownian_field, generate_event):
    estimate = mc_log_prob(unit_brownian_field, 0.5, generate_event("always"), 1000, 16, seed=0)

    assert estimate.hits == 1000
    assert estimate.flag == "certain"
    assert estimate.eps_log_p == 0.0
    assert estimate.stderr == 0.0


def test_too_few_trials(unit_brownian_field, generate_event):
    with pytest.raises(ValueError, match="at least 1000"):
        mc_log_prob(unit_brownian_field, 0.5, generate_event("always"), 999, 16, seed=0)


def test_threads_do_not_change_counts(unit_brownian_field, generate_event):
    event = generate_event("exit_ball", radius=1.0)

    serial = mc_log_prob(unit_brownian_field, 0.3, event, 3000, 32, seed=2, threads=1)
    farmed = mc_log_prob(unit_brownian_field, 0.3, event, 3000, 32, seed=2, threads=4)

    assert serial == farmed


@pytest.mark.slow
def test_brownian_level_cross():
    """eps log P(sup W >= eps**-0.5) is about -0.73 at eps = 0.2, -1/2 in the limit."""
    from loglip_sde.coeffs import constant_field
    from loglip_sde.ldp import PathEvent

    estimate = mc_log_prob(
        constant_field(0.0, 1.0), 0.2, PathEvent("level_cross", {"level": 1.0}), 20000, 256, seed=0
    )

    assert estimate.lo <= estimate.eps_log_p <= estimate.hi
    assert -0.85 < estimate.eps_log_p < -0.65
