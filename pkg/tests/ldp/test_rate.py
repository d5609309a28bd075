"""Test ``ldp.rate`` module."""

import numpy as np
import pytest

from loglip_sde.ldp import rate_functional
from loglip_sde.paths import energy


def test_brownian_level_cross(unit_brownian_field, generate_event):
    """Reaching level 1 before T = 1 costs 1/2."""
    result = rate_functional(unit_brownian_field, generate_event("level_cross", level=1.0), 8, 2, seed=0)

    assert result.feasible
    assert result.rate == pytest.approx(0.5, abs=1e-3)
    assert result.rate <= 0.5
    np.testing.assert_allclose(result.to_control().values[:, 0], np.linspace(0, 1, 9), atol=1e-3)


def test_brownian_terminal_hit(unit_brownian_field, generate_event):
    result = rate_functional(unit_brownian_field, generate_event("terminal_hit", target=0.5), 8, 1, seed=0)

    assert result.rate == pytest.approx(1 / 8, abs=1e-4)
    assert result.residual <= result.tolerance


def test_target_at_start_costs_nothing(unit_brownian_field, generate_event):
    result = rate_functional(
        unit_brownian_field, generate_event("terminal_hit", target=0.3), 8, 1, seed=0, x0=[0.3]
    )

    assert result.rate == 0.0
    assert result.residual == 0.0
    assert len(result.trace[0].stages) == 1


def test_diffusion_rescales_the_rate(generate_field, generate_event):
    """x = 2 g reaches 1 with g(T) = 1/2."""
    field = generate_field("constant", diffusion=2.0)

    result = rate_functional(field, generate_event("terminal_hit", target=1.0), 8, 1, seed=0)

    assert result.rate == pytest.approx(1 / 8, abs=1e-4)


def test_drift_shifts_the_target(generate_field, generate_event):
    field = generate_field("constant", drift=0.1, diffusion=1.0)

    result = rate_functional(field, generate_event("terminal_hit", target=1.0), 8, 1, seed=0)

    assert result.rate == pytest.approx(0.405, abs=1e-3)


def test_exit_ball_rate_grows_with_radius(unit_brownian_field, generate_event):
    rates = [
        rate_functional(unit_brownian_field, generate_event("exit_ball", radius=R), 8, 1, seed=0).rate
        for R in (0.5, 1.0, 1.5)
    ]

    np.testing.assert_allclose(rates, [0.125, 0.5, 1.125], rtol=1e-2)


def test_declared_radius_matches_truncation(generate_field, generate_event):
    event = generate_event("terminal_hit", target=0.5)
    localized = rate_functional(generate_field("linear", matrix=-1.0, diffusion=1.0), event, 8, 1, seed=0, radius=10.0)
    truncated = rate_functional(generate_field("truncated:linear:10", matrix=-1.0, diffusion=1.0), event, 8, 1, seed=0)

    assert not localized.left_radius
    assert localized.rate == pytest.approx(truncated.rate, abs=1e-8)


def test_declared_radius_truncates_the_drift(generate_field, generate_event):
    """b(x) = x helps reach 6 until the truncation caps it near 2.05 outside radius 0.2."""
    field = generate_field("linear", matrix=1.0, diffusion=1.0)
    event = generate_event("terminal_hit", target=6.0)

    wide = rate_functional(field, event, 8, 1, seed=0, radius=10.0)
    narrow = rate_functional(field, event, 8, 1, seed=0, radius=0.2)
    truncated = rate_functional(generate_field("truncated:linear:0.2", matrix=1.0, diffusion=1.0), event, 8, 1, seed=0)

    assert wide.feasible and narrow.feasible
    # untruncated optimum is 36 / (e^2 - 1) ~ 5.63
    assert wide.rate < 6.2
    # a drift capped at 2.05 leaves at least 3.95 to the control, rate >= 3.95^2 / 2
    assert narrow.rate > 7.7
    assert narrow.left_radius
    assert narrow.rate == pytest.approx(truncated.rate, abs=1e-8)


def test_leaving_the_radius_is_flagged(generate_field, generate_event):
    field = generate_field("linear", matrix=-1.0, diffusion=1.0)

    result = rate_functional(field, generate_event("terminal_hit", target=0.5), 8, 1, seed=0, radius=0.1)

    assert result.left_radius


def test_unbounded_field_needs_radius(generate_field, generate_event):
    with pytest.raises(ValueError, match="declare the optimiser radius"):
        rate_functional(generate_field("linear"), generate_event("terminal_hit", target=1.0), 8, 1, seed=0)


def test_infeasible_without_noise(generate_field, generate_event):
    field = generate_field("constant", drift=0.0, diffusion=0.0)

    result = rate_functional(field, generate_event("terminal_hit", target=1.0), 4, 2, seed=0)

    assert not result.feasible
    assert result.status == "infeasible"
    assert result.residual == pytest.approx(1.0)


def test_restarts_are_reproducible(unit_brownian_field, generate_event):
    event = generate_event("exit_ball", radius=1.0)

    serial = rate_functional(unit_brownian_field, event, 8, 3, seed=4, threads=1)
    farmed = rate_functional(unit_brownian_field, event, 8, 3, seed=4, threads=3)

    assert serial == farmed
    assert [record.restart for record in serial.trace] == [0, 1, 2]


def test_rate_is_half_energy(unit_brownian_field, generate_event):
    result = rate_functional(unit_brownian_field, generate_event("level_cross", level=0.7), 4, 1, seed=0)

    assert result.rate == pytest.approx(0.5 * energy(result.to_control()))
    header, rows = result.csv_rows()
    assert header == ["t", "g0", "I", "residual", "status"]
    assert len(rows) == 5


@pytest.mark.parametrize("knots, restarts", [(0, 1), (4, 0)])
def test_invalid_sizes(unit_brownian_field, generate_event, knots, restarts):
    with pytest.raises(ValueError, match="must be a positive integer"):
        rate_functional(unit_brownian_field, generate_event("always"), knots, restarts, seed=0)
