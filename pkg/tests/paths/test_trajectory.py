"""Test ``paths.trajectory`` module."""

import numpy as np
import pytest

from loglip_sde.paths import ExitRecord, TimeGrid, Trajectory, restrict, sup_distance


def _trajectory(n, values, exit=None):
    return Trajectory(grid=TimeGrid(n), states=np.asarray(values, dtype=float), exit=exit)


def test_sup_distance_on_nested_grids():
    coarse = _trajectory(2, [0.0, 1.0, 2.0])
    fine = _trajectory(4, [0.0, 9.0, 1.5, 9.0, 2.0])

    assert sup_distance(coarse, fine) == pytest.approx(0.5)


def test_sup_distance_exploded():
    exploded = _trajectory(4, [0.0, 1.0], exit=ExitRecord(index=2, time=0.5, guard=1e12))

    assert exploded.exploded
    assert sup_distance(exploded, _trajectory(4, np.zeros(5))) == np.inf


def test_sup_distance_dimension_mismatch():
    with pytest.raises(ValueError, match="different dimensions"):
        sup_distance(_trajectory(1, np.zeros((2, 1))), _trajectory(1, np.zeros((2, 2))))


def test_restrict_keeps_exit():
    fine = _trajectory(8, np.arange(5.0), exit=ExitRecord(index=5, time=0.625, guard=1e12))

    coarse = restrict(fine, TimeGrid(4))

    assert coarse.exit.index == 3
    assert coarse.exit.time == pytest.approx(0.75)
    np.testing.assert_array_equal(coarse.states[:, 0], [0.0, 2.0, 4.0])


def test_restrict_driver_keeps_lineage(generate_driver):
    driver = generate_driver(n=16, seed=4, trial=2)

    coarse = restrict(driver, TimeGrid(4))

    assert coarse.lineage == driver.lineage
    np.testing.assert_array_equal(coarse.values, driver.values[::4])


def test_state_count_checked():
    with pytest.raises(ValueError, match="expected 3 on this grid"):
        _trajectory(2, np.zeros(4))
    with pytest.raises(ValueError, match="exploded at"):
        _trajectory(4, [0.0], exit=ExitRecord(index=1, time=0.25, guard=1.0)).as_path()
