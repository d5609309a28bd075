"""Test ``sde.euler`` module."""

import numpy as np
import pytest

from loglip_sde.lyapunov import stroock_bound
from loglip_sde.paths import TimeGrid
from loglip_sde.sde import SdeRun, coupled_ladder_paths, euler_maruyama, run_trials, simulate_batch
from loglip_sde.skeleton import euler_polygon


def test_scheme_is_polygon_of_scaled_path(generate_field, generate_driver):
    """X_n^eps equals F_n(eps**0.5 W) bit for bit."""
    field = generate_field("sine_series", K_terms=64, diffusion_scale=1.0)
    driver = generate_driver(m=2, n=128, seed=5)

    scheme = euler_maruyama(SdeRun(field, 0.3, [0.1, -0.2], driver))
    polygon = euler_polygon(field, driver.scaled(np.sqrt(0.3)), [0.1, -0.2])

    np.testing.assert_array_equal(scheme.states, polygon.states)


def test_batch_matches_single_runs(generate_field, generate_driver):
    field = generate_field("log_growth", diffusion=1.0)
    grid = TimeGrid(64)

    states, exit_index = simulate_batch(field, 0.5, [1.0], grid, 9, [0, 1, 2])

    for row in range(3):
        single = euler_maruyama(SdeRun(field, 0.5, [1.0], generate_driver(n=64, seed=9, trial=row)))
        np.testing.assert_array_equal(states[row], single.states)
    np.testing.assert_array_equal(exit_index, [-1, -1, -1])


@pytest.mark.parametrize("epsilon", [0.0, -1.0])
def test_epsilon_must_be_positive(unit_brownian_field, generate_driver, epsilon):
    with pytest.raises(ValueError, match="epsilon must be positive"):
        SdeRun(unit_brownian_field, epsilon, [0.0], generate_driver())


def test_noise_dimension_checked(unit_brownian_field, generate_driver):
    with pytest.raises(ValueError, match="field expects m = 1"):
        SdeRun(unit_brownian_field, 1.0, [0.0], generate_driver(m=2))


def test_coupled_ladder_paths_are_restrictions():
    paths = coupled_ladder_paths(1, [4, 16], 64, 1.0, 3, [0, 1])

    assert sorted(paths) == [4, 16, 64]
    np.testing.assert_array_equal(paths[64][:, ::4], paths[16])
    np.testing.assert_array_equal(paths[64][:, ::16], paths[4])


@pytest.mark.parametrize("threads", [1, 2, 5])
def test_run_trials_independent_of_threads(unit_brownian_field, threads):
    grid = TimeGrid(16)

    def finals(chunk):
        states, _ = simulate_batch(unit_brownian_field, 1.0, [0.0], grid, 0, chunk)
        return states[:, -1, 0]

    serial = np.concatenate(run_trials(finals, 10, 17, 2, threads=1, chunk_size=3))
    farmed = np.concatenate(run_trials(finals, 10, 17, 2, threads=threads, chunk_size=3))

    np.testing.assert_array_equal(serial, farmed)


@pytest.mark.slow
@pytest.mark.parametrize(
    "sigma, b, R",
    [(1.0, 0.0, 2.0), (1.0, 0.0, 3.0), (1.0, 0.5, 2.5), (0.5, 0.0, 1.0), (2.0, 0.25, 4.0)],
)
def test_exit_frequency_below_sup_bound(generate_field, sigma, b, R):
    field = generate_field("constant", drift=b, diffusion=sigma)
    trials = 20000

    states, _ = simulate_batch(field, 1.0, [0.0], TimeGrid(256), 0, range(trials))

    p_hat = np.mean(np.abs(states[..., 0]).max(axis=1) >= R)
    stderr = np.sqrt(p_hat * (1 - p_hat) / trials)
    assert p_hat <= stroock_bound(sigma, abs(b), 1.0, R, 1) + 3 * stderr
