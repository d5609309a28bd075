# -*- coding: utf-8 -*-
"""The Euler-Maruyama scheme and the batched Monte Carlo engine."""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, TypeVar

import numpy as np

from loglip_sde.coeffs.field import CoefficientField, check_finite_point
from loglip_sde.paths.brownian import BrownianDriver, brownian_paths, refine_paths_to
from loglip_sde.paths.grid import TimeGrid
from loglip_sde.paths.trajectory import Trajectory
from loglip_sde.skeleton.solvers import ExplosionGuard, euler_batch, euler_polygon
from loglip_sde.utils.log import get_logger
from loglip_sde.utils.parallel import bounded_chunk_size, map_chunks
from loglip_sde.utils.protocol import get_criteria

logger = get_logger(__name__)

R = TypeVar("R")


@dataclass(frozen=True, eq=False)
class SdeRun:
    """``dX = eps**0.5 sigma(X) dW + b(X) dt`` from ``x0`` driven by ``driver``."""

    field: CoefficientField
    epsilon: float
    x0: np.ndarray
    driver: BrownianDriver
    guard: Optional[ExplosionGuard] = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.driver.m != self.field.dim_noise:
            raise ValueError(
                f"driver has noise dimension {self.driver.m}, field expects m = {self.field.dim_noise}"
            )
        object.__setattr__(self, "x0", check_finite_point(self.x0, "x0"))


def euler_maruyama(run: SdeRun, levels: Sequence[float] = ()) -> Trajectory:
    """``X_n^eps``, computed as the Euler polygon over the path ``eps**0.5 W``.

    Sharing the recursion makes ``X_n^eps = F_n(eps**0.5 W)`` hold bit for bit.
    ``levels`` adds first hitting times of ``|x| >= R`` to the trajectory.
    """
    return euler_polygon(
        run.field,
        run.driver.scaled(np.sqrt(run.epsilon)),
        run.x0,
        guard=run.guard,
        levels=levels,
    )


def simulate_batch(
    field: CoefficientField,
    epsilon: float,
    x0,
    grid: TimeGrid,
    seed: int,
    trials: Sequence[int],
    guard: Optional[ExplosionGuard] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """States ``(len(trials), n+1, d)`` and exit nodes of the Euler-Maruyama runs of ``trials``."""
    paths = brownian_paths(field.dim_noise, grid, seed, trials)
    return euler_batch(
        field, np.sqrt(epsilon) * paths, x0, grid.dt, guard or ExplosionGuard.default()
    )


def coupled_ladder_paths(
    m: int, n_ladder: Sequence[int], top: int, T: float, seed: int, trials: Sequence[int]
) -> dict[int, np.ndarray]:
    """Driver paths of ``trials`` on every grid of ``n_ladder`` and on ``top``, all coupled.

    Paths are drawn on the coarsest grid and bridge-refined upward, so each grid is the
    restriction of the finer ones.
    """
    sizes = sorted(set(int(n) for n in n_ladder) | {int(top)})
    grid = TimeGrid(sizes[0], T)
    paths = {grid.n: brownian_paths(m, grid, seed, trials)}
    level = 0
    for n in sizes[1:]:
        target = TimeGrid(n, T)
        refined = refine_paths_to(paths[grid.n], grid, target, seed, trials, level)
        level += int(np.log2(n // grid.n))
        paths[n], grid = refined, target
    return paths


def run_trials(
    func: Callable[[range], R],
    trials: int,
    nodes: int,
    width: int,
    threads: int = 1,
    chunk_size: Optional[int] = None,
) -> list[R]:
    """Apply ``func`` to consecutive trial chunks, results in trial order.

    The chunk size comes from the protocol and the array sizes only, so results do not
    depend on ``threads``.
    """
    chunk_size = int(get_criteria("montecarlo")["chunk_size"] if chunk_size is None else chunk_size)
    size = bounded_chunk_size(chunk_size, nodes, width)
    return map_chunks(func, trials, size, threads)
