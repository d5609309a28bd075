# -*- coding: utf-8 -*-
"""Coupled runs: pathwise uniqueness and continuity in the initial value."""

from typing import Callable, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs.field import CoefficientField, check_finite_point
from loglip_sde.exceptions import NumericalFailure
from loglip_sde.paths.brownian import BrownianDriver, brownian_paths
from loglip_sde.paths.grid import TimeGrid
from loglip_sde.paths.trajectory import Trajectory
from loglip_sde.sde.euler import SdeRun, coupled_ladder_paths, euler_maruyama, run_trials, simulate_batch
from loglip_sde.skeleton.solvers import ExplosionGuard, euler_batch
from loglip_sde.utils.log import get_logger, report

logger = get_logger(__name__)


def coupled_pair(
    field: CoefficientField, epsilon: float, driver: BrownianDriver, x0, y0
) -> tuple[Trajectory, Trajectory]:
    """Euler-Maruyama runs from ``x0`` and ``y0`` driven by the same increments."""
    first = euler_maruyama(SdeRun(field, epsilon, x0, driver))
    second = euler_maruyama(SdeRun(field, epsilon, y0, driver))
    if first.exploded or second.exploded:
        logger.warning("a run of the coupled pair exploded")
    return first, second


def _offset_points(x0: np.ndarray, deltas: np.ndarray) -> list[np.ndarray]:
    e1 = np.eye(x0.shape[0])[0]
    return [x0 + delta * e1 for delta in deltas]


def _check_delta_ladder(delta_ladder) -> np.ndarray:
    deltas = np.asarray(delta_ladder, dtype=float)
    if deltas.ndim != 1 or deltas.size == 0:
        raise ValueError("delta_ladder must be a non-empty list")
    if np.any(deltas < 0) or np.any(np.diff(deltas) >= 0):
        raise ValueError(f"delta_ladder must be non-negative and strictly decreasing, got {deltas.tolist()}")
    return deltas


def sup_gap(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Per-row sup over nodes of ``|a - b|``; rows touching an explosion give inf."""
    with np.errstate(invalid="ignore"):
        gap = np.linalg.norm(a - b, axis=-1).max(axis=1)
    finite = np.all(np.isfinite(a), axis=(1, 2)) & np.all(np.isfinite(b), axis=(1, 2))
    return np.where(finite, gap, np.inf)


class StabilityRow(BaseModel):
    delta: float
    trials: int
    exceed: int
    probability: float
    stderr: float


class StabilityReport(BaseModel):
    epsilon: float
    threshold: float
    n: int
    seed: int
    rows: list[StabilityRow]
    non_increasing: bool

    def csv_rows(self) -> tuple[list[str], list[list]]:
        return (
            ["delta", "trials", "exceed", "probability", "stderr"],
            [[r.delta, r.trials, r.exceed, r.probability, r.stderr] for r in self.rows],
        )


def non_increasing_within(values: np.ndarray, stderr: np.ndarray, slack: float = 2.0) -> bool:
    """``values[i+1] <= values[i]`` up to ``slack`` combined standard errors."""
    allowed = slack * np.sqrt(stderr[1:] ** 2 + stderr[:-1] ** 2)
    return bool(np.all(values[1:] <= values[:-1] + allowed))


def stability_probability(
    field: CoefficientField,
    epsilon: float,
    x0,
    delta_ladder: Sequence[float],
    threshold: float,
    trials: int,
    n: int,
    seed: int,
    T: float = 1.0,
    threads: int = 1,
) -> StabilityReport:
    """Fraction of coupled trials with ``sup_t |X(t, x0 + delta e1) - X(t, x0)| > threshold``."""
    x0 = check_finite_point(x0, "x0")
    deltas = _check_delta_ladder(delta_ladder)
    if not threshold > 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    grid = TimeGrid(n, T)
    starts = _offset_points(x0, deltas)
    guard = ExplosionGuard.default()

    def _count(chunk: range) -> np.ndarray:
        paths = np.sqrt(epsilon) * brownian_paths(field.dim_noise, grid, seed, chunk)
        base, _ = euler_batch(field, paths, x0, grid.dt, guard)
        counts = []
        for delta, y0 in zip(deltas, starts):
            if delta == 0:
                counts.append(0)
                continue
            other, _ = euler_batch(field, paths, y0, grid.dt, guard)
            counts.append(int(np.sum(sup_gap(base, other) > threshold)))
        return np.array(counts)

    exceed = np.sum(run_trials(_count, trials, n + 1, 3 * field.dim_state, threads), axis=0)
    probability = exceed / trials
    stderr = np.sqrt(probability * (1 - probability) / trials)

    result = StabilityReport(
        epsilon=epsilon,
        threshold=threshold,
        n=n,
        seed=seed,
        rows=[
            StabilityRow(delta=d, trials=trials, exceed=int(e), probability=float(p), stderr=float(s))
            for d, e, p, s in zip(deltas, exceed, probability, stderr)
        ],
        non_increasing=non_increasing_within(probability, stderr),
    )
    report(logger, f"stability of `{field.label}`: {probability.tolist()}")
    return result


class ExpectationGapRow(BaseModel):
    delta: float
    mean_gap: float
    stderr: float


class ExpectationGapReport(BaseModel):
    rows: list[ExpectationGapRow]
    non_increasing: bool


def default_observable(x: np.ndarray) -> np.ndarray:
    """Bounded Lipschitz test function ``sum_i tanh(x_i)``."""
    return np.tanh(x).sum(axis=-1)


def expectation_gap(
    field: CoefficientField,
    epsilon: float,
    x0,
    delta_ladder: Sequence[float],
    trials: int,
    n: int,
    seed: int,
    observable: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    T: float = 1.0,
    threads: int = 1,
) -> ExpectationGapReport:
    """``|E phi(X(T, x0 + delta e1)) - E phi(X(T, x0))|`` from coupled runs, per delta."""
    x0 = check_finite_point(x0, "x0")
    deltas = _check_delta_ladder(delta_ladder)
    observable = observable or default_observable
    grid = TimeGrid(n, T)
    starts = _offset_points(x0, deltas)

    def _moments(chunk: range) -> np.ndarray:
        base, exit_base = simulate_batch(field, epsilon, x0, grid, seed, chunk)
        phi_base = observable(base[:, -1])
        sums = []
        for y0 in starts:
            other, exit_other = simulate_batch(field, epsilon, y0, grid, seed, chunk)
            diff = observable(other[:, -1]) - phi_base
            if np.any(exit_base >= 0) or np.any(exit_other >= 0):
                raise NumericalFailure(
                    "a coupled run exploded, the observable is undefined",
                    {"trials": [chunk.start, chunk.stop], "start": y0.tolist()},
                )
            sums.append([diff.sum(), (diff**2).sum()])
        return np.array(sums)

    totals = np.sum(run_trials(_moments, trials, n + 1, 2 * field.dim_state, threads), axis=0)
    mean = totals[:, 0] / trials
    variance = np.maximum(totals[:, 1] / trials - mean**2, 0.0)
    stderr = np.sqrt(variance / trials)

    return ExpectationGapReport(
        rows=[
            ExpectationGapRow(delta=d, mean_gap=float(abs(m)), stderr=float(s))
            for d, m, s in zip(deltas, mean, stderr)
        ],
        non_increasing=non_increasing_within(np.abs(mean), stderr),
    )


class RefinementRow(BaseModel):
    n: int
    median_gap: float


class RefinementReport(BaseModel):
    rows: list[RefinementRow]
    decreasing: bool


def refinement_gaps(
    field: CoefficientField,
    epsilon: float,
    x0,
    n_ladder: Sequence[int],
    trials: int,
    seed: int,
    T: float = 1.0,
    threads: int = 1,
) -> RefinementReport:
    """Median over trials of the sup-distance between the runs at mesh n and its refinement 2n."""
    x0 = check_finite_point(x0, "x0")
    n_ladder = [int(n) for n in n_ladder]
    if any(b <= a for a, b in zip(n_ladder[:-1], n_ladder[1:])):
        raise ValueError(f"n_ladder must be strictly increasing, got {n_ladder}")
    top = 2 * n_ladder[-1]
    guard = ExplosionGuard.default()

    def _gaps(chunk: range) -> np.ndarray:
        sizes = sorted(set(n_ladder) | {2 * n for n in n_ladder})
        paths = coupled_ladder_paths(field.dim_noise, sizes, top, T, seed, chunk)
        gaps = []
        for n in n_ladder:
            coarse, _ = euler_batch(field, np.sqrt(epsilon) * paths[n], x0, T / n, guard)
            fine, _ = euler_batch(field, np.sqrt(epsilon) * paths[2 * n], x0, T / (2 * n), guard)
            gaps.append(sup_gap(coarse, fine[:, ::2]))
        return np.stack(gaps, axis=1)

    table = np.concatenate(run_trials(_gaps, trials, top + 1, 4 * field.dim_state, threads))
    median = np.median(table, axis=0)

    return RefinementReport(
        rows=[RefinementRow(n=n, median_gap=float(g)) for n, g in zip(n_ladder, median)],
        decreasing=bool(np.all(np.diff(median) < 0)),
    )
