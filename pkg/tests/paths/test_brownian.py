"""Test ``paths.brownian`` module."""

import numpy as np
import pytest

from loglip_sde.paths import TimeGrid, brownian_paths, refine_brownian, refine_paths_to, sample_brownian


def test_driver_is_reproducible(generate_driver):
    a = generate_driver(m=2, seed=3, trial=5)
    b = generate_driver(m=2, seed=3, trial=5)

    np.testing.assert_array_equal(a.values, b.values)
    assert a.lineage == (3, 5, 0)
    assert a.m == 2
    np.testing.assert_array_equal(a.values[0], [0.0, 0.0])


def test_batch_matches_single_trials():
    grid = TimeGrid(32)
    batch = brownian_paths(1, grid, 11, [4, 2])

    np.testing.assert_array_equal(batch[0], sample_brownian(1, grid, 11, 4).values)
    np.testing.assert_array_equal(batch[1], sample_brownian(1, grid, 11, 2).values)


def test_refinement_keeps_coarse_nodes(generate_driver):
    coarse = generate_driver(n=16, seed=1)

    fine = refine_brownian(refine_brownian(coarse))

    assert fine.grid.n == 64
    assert fine.level == 2
    np.testing.assert_array_equal(fine.values[::4], coarse.values)


def test_refine_paths_to_matches_stepwise(generate_driver):
    coarse = generate_driver(n=8, seed=2, trial=1)

    direct = refine_paths_to(coarse.values[None], coarse.grid, TimeGrid(32), 2, [1])[0]

    np.testing.assert_array_equal(direct, refine_brownian(refine_brownian(coarse)).values)


def test_refinement_factor_must_be_power_of_two(generate_driver):
    coarse = generate_driver(n=8)

    with pytest.raises(ValueError, match="not a power of two"):
        refine_paths_to(coarse.values[None], coarse.grid, TimeGrid(24), 0, [0])


def test_increment_variance():
    """Increments over dt have variance dt, bridge midpoints included."""
    grid = TimeGrid(16)
    paths = brownian_paths(1, grid, 0, range(4000))
    refined = refine_paths_to(paths, grid, TimeGrid(32), 0, range(4000))

    for values, dt in ((paths, 1 / 16), (refined, 1 / 32)):
        variance = np.var(np.diff(values[..., 0], axis=1))
        assert variance == pytest.approx(dt, rel=0.05)
