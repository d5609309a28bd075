"""Test ``paths.control`` module."""

import numpy as np
import pytest

from loglip_sde.paths import Control, TimeGrid, energy, random_controls


def test_linear_control_energy():
    """g(t) = c t has energy |c|**2 T."""
    grid = TimeGrid(8, 2.0)
    g = Control.from_function(lambda t: np.outer(t, [1.0, -2.0]), grid)

    assert energy(g) == pytest.approx(10.0)
    np.testing.assert_allclose(g.slopes, np.tile([1.0, -2.0], (8, 1)))


def test_from_slopes():
    grid = TimeGrid(4)
    g = Control.from_slopes([1.0, 1.0, -1.0, -1.0], grid)

    np.testing.assert_allclose(g.values[:, 0], [0.0, 0.25, 0.5, 0.25, 0.0])
    assert energy(g) == pytest.approx(1.0)


def test_control_starts_at_zero():
    with pytest.raises(ValueError, match="a control starts at 0"):
        Control(grid=TimeGrid(2), values=[1.0, 1.0, 1.0])


def test_on_grid_interpolates():
    g = Control(grid=TimeGrid(2), values=[0.0, 1.0, 0.0])

    sampled = g.on_grid(TimeGrid(4))

    np.testing.assert_allclose(sampled.values[:, 0], [0.0, 0.5, 1.0, 0.5, 0.0])
    with pytest.raises(ValueError, match="differs from grid horizon"):
        g.on_grid(TimeGrid(4, 2.0))


def test_random_controls_energies():
    controls = random_controls(20, TimeGrid(8), 2, alpha=3.0, seed=5)

    energies = [energy(g) for g in controls]
    assert all(0 < e <= 3.0 + 1e-12 for e in energies)
    assert len(set(energies)) == 20

    again = random_controls(20, TimeGrid(8), 2, alpha=3.0, seed=5)
    np.testing.assert_array_equal(controls[7].values, again[7].values)


@pytest.mark.parametrize("count, alpha, match", [(0, 1.0, "count"), (2, 0.0, "alpha")])
def test_random_controls_invalid(count, alpha, match):
    with pytest.raises(ValueError, match=match):
        random_controls(count, TimeGrid(4), 1, alpha, 0)
