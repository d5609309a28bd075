# -*- coding: utf-8 -*-
"""Brownian drivers from counter-based streams, with Brownian-bridge refinement.

Trial ``i`` of seed ``s`` draws its increments from the stream ``(s, i, level=0)`` and the
midpoints of its ``j``-th refinement from ``(s, i, level=j)``. A driver therefore depends
only on its seed lineage, and a refined driver reproduces every coarse node bit for bit.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from loglip_sde.paths.grid import GridPath, TimeGrid
from loglip_sde.utils.rng import generator


@dataclass(frozen=True, eq=False)
class BrownianDriver(GridPath):
    seed: int = 0
    trial: int = 0
    level: int = 0

    @property
    def m(self) -> int:
        return self.dim

    @property
    def lineage(self) -> tuple[int, int, int]:
        return self.seed, self.trial, self.level


def brownian_paths(m: int, grid: TimeGrid, seed: int, trials: Sequence[int]) -> np.ndarray:
    """Path values ``W(t_k)`` for every trial, shape ``(len(trials), n+1, m)``."""
    if m < 1:
        raise ValueError(f"noise dimension m must be positive, got {m}")

    scale = np.sqrt(grid.dt)
    paths = np.zeros((len(trials), grid.n + 1, m))
    for row, trial in enumerate(trials):
        z = generator(seed, trial, 0).standard_normal((grid.n, m))
        np.cumsum(scale * z, axis=0, out=paths[row, 1:])
    return paths


def refine_paths(
    paths: np.ndarray, grid: TimeGrid, seed: int, trials: Sequence[int], level: int
) -> np.ndarray:
    """Bridge refinement of ``paths`` (on ``grid``) to the doubled grid.

    ``level`` is the refinement depth of the result; coarse nodes are copied and every
    midpoint is ``(W_k + W_{k+1}) / 2 + sqrt(T / 4n) z``.
    """
    if level < 1:
        raise ValueError(f"refinement level must be at least 1, got {level}")

    count, _, m = paths.shape
    scale = np.sqrt(grid.T / (4 * grid.n))
    refined = np.empty((count, 2 * grid.n + 1, m))
    refined[:, ::2] = paths
    mean = 0.5 * (paths[:, :-1] + paths[:, 1:])
    for row, trial in enumerate(trials):
        z = generator(seed, trial, level).standard_normal((grid.n, m))
        refined[row, 1::2] = mean[row] + scale * z
    return refined


def refine_paths_to(
    paths: np.ndarray, grid: TimeGrid, target: TimeGrid, seed: int, trials: Sequence[int], level: int = 0
) -> np.ndarray:
    """Repeated bridge refinement from ``grid`` (at depth ``level``) up to ``target``."""
    stride = target.stride_to(grid)
    if stride & (stride - 1):
        raise ValueError(f"refinement factor {stride} is not a power of two")

    while grid.n < target.n:
        level += 1
        paths = refine_paths(paths, grid, seed, trials, level)
        grid = grid.refine()
    return paths


def sample_brownian(m: int, grid: TimeGrid, seed: int, trial: int = 0) -> BrownianDriver:
    """Driver of trial ``trial``; identical arguments give identical paths."""
    values = brownian_paths(m, grid, seed, [trial])[0]
    return BrownianDriver(grid=grid, values=values, seed=seed, trial=trial, level=0)


def refine_brownian(w: BrownianDriver) -> BrownianDriver:
    """The driver on the doubled grid, coarse nodes preserved exactly."""
    values = refine_paths(w.values[None], w.grid, w.seed, [w.trial], w.level + 1)[0]
    return BrownianDriver(
        grid=w.grid.refine(), values=values, seed=w.seed, trial=w.trial, level=w.level + 1
    )
