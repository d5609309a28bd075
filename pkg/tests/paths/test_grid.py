"""Test ``paths.grid`` module."""

import numpy as np
import pytest

from loglip_sde.paths import GridPath, TimeGrid, common_grid


def test_nodes():
    grid = TimeGrid(4, 2.0)

    np.testing.assert_allclose(grid.nodes, [0.0, 0.5, 1.0, 1.5, 2.0])
    assert grid.dt == 0.5
    assert grid.refine(4).n == 16


@pytest.mark.parametrize(
    "n, T, match",
    [
        (0, 1.0, "n must be a positive integer"),
        (2.5, 1.0, "n must be a positive integer"),
        (4, 0.0, "horizon T must be positive"),
        (4, np.inf, "horizon T must be positive"),
    ],
)
def test_invalid_grid(n, T, match):
    with pytest.raises(ValueError, match=match):
        TimeGrid(n, T)


def test_stride_to():
    fine = TimeGrid(12)

    assert fine.stride_to(TimeGrid(4)) == 3
    assert common_grid(fine, TimeGrid(3)) == TimeGrid(3)
    with pytest.raises(ValueError, match="is not a coarsening"):
        fine.stride_to(TimeGrid(5))
    with pytest.raises(ValueError, match="is not a coarsening"):
        fine.stride_to(TimeGrid(4, 2.0))


def test_grid_path_is_read_only():
    path = GridPath(TimeGrid(2), [0.0, 1.0, 3.0])

    assert path.dim == 1
    with pytest.raises(ValueError):
        path.values[0, 0] = 1.0


def test_grid_path_interpolation():
    path = GridPath(TimeGrid(2), [[0.0, 0.0], [1.0, -1.0], [3.0, -1.0]])

    np.testing.assert_allclose(path.at([0.25, 0.75]), [[0.5, -0.5], [2.0, -1.0]])
    np.testing.assert_allclose(path.scaled(2.0).values[2], [6.0, -2.0])


def test_grid_path_shape_mismatch():
    with pytest.raises(ValueError, match="expected \\(3, dim\\)"):
        GridPath(TimeGrid(2), np.zeros((4, 1)))
