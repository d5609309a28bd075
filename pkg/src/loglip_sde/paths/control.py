# -*- coding: utf-8 -*-
"""Piecewise-linear Cameron-Martin controls."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from loglip_sde.paths.grid import GridPath, TimeGrid
from loglip_sde.utils.rng import generator


@dataclass(frozen=True, eq=False)
class Control(GridPath):
    """Knot values ``g(t_k)`` with ``g(0) = 0``, linear between knots."""

    def __post_init__(self):
        super().__post_init__()
        if np.any(self.values[0] != 0):
            raise ValueError(f"a control starts at 0, got g(0) = {self.values[0].tolist()}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("control knot values must be finite")

    @property
    def m(self) -> int:
        return self.dim

    @property
    def slopes(self) -> np.ndarray:
        """Constant derivative on every knot segment, shape ``(n, m)``."""
        return self.increments / self.grid.dt

    @classmethod
    def zero(cls, grid: TimeGrid, m: int) -> "Control":
        return cls(grid=grid, values=np.zeros((grid.n + 1, m)))

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], grid: TimeGrid) -> "Control":
        """Interpolant of ``func`` at the knots; ``func`` maps times to ``(len(t), m)`` or ``(len(t),)``."""
        return cls(grid=grid, values=func(grid.nodes))

    @classmethod
    def from_slopes(cls, slopes, grid: TimeGrid) -> "Control":
        slopes = np.asarray(slopes, dtype=float).reshape(grid.n, -1)
        values = np.vstack([np.zeros((1, slopes.shape[1])), np.cumsum(slopes * grid.dt, axis=0)])
        return cls(grid=grid, values=values)

    def on_grid(self, grid: TimeGrid) -> GridPath:
        """The control sampled at the nodes of another grid of the same horizon."""
        if grid.T != self.grid.T:
            raise ValueError(f"control horizon {self.grid.T} differs from grid horizon {grid.T}")
        return GridPath(grid, self.at(grid.nodes))


def energy(g: Control) -> float:
    """``e(g) = int_0^T |g'(t)|**2 dt``, exact for the piecewise-linear interpolant."""
    return float(np.sum(g.increments**2) / g.grid.dt)


def random_controls(count: int, grid: TimeGrid, m: int, alpha: float, seed: int) -> list[Control]:
    """Seeded controls with Gaussian knot slopes rescaled to energies uniform in ``(0, alpha]``."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")

    controls = []
    for index in range(count):
        rng = generator(seed, index, tag="controls")
        slopes = rng.standard_normal((grid.n, m))
        target = alpha * (1.0 - rng.random())
        g = Control.from_slopes(slopes, grid)
        controls.append(Control(grid=grid, values=g.values * np.sqrt(target / energy(g))))
    return controls
