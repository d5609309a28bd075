# -*- coding: utf-8 -*-
"""Uniform time grids and paths indexed by them."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TimeGrid:
    """Nodes ``t_k = k T / n`` for ``k = 0..n``."""

    n: int
    T: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValueError(f"horizon T must be positive, got {self.T}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "T", float(self.T))

    @property
    def dt(self) -> float:
        return self.T / self.n

    @property
    def nodes(self) -> np.ndarray:
        return self.T * np.arange(self.n + 1) / self.n

    def refine(self, factor: int = 2) -> "TimeGrid":
        return TimeGrid(self.n * factor, self.T)

    def stride_to(self, coarse: "TimeGrid") -> int:
        """Index stride mapping the nodes of ``coarse`` into this grid.

        Raises ``ValueError`` unless ``coarse`` has the same horizon and its nodes are a
        subset of these nodes.
        """
        if coarse.T != self.T or self.n % coarse.n:
            raise ValueError(
                f"grid (n={coarse.n}, T={coarse.T}) is not a coarsening of (n={self.n}, T={self.T})"
            )
        return self.n // coarse.n


def common_grid(a: TimeGrid, b: TimeGrid) -> TimeGrid:
    """The coarser of two nested grids."""
    coarse, fine = (a, b) if a.n <= b.n else (b, a)
    fine.stride_to(coarse)
    return coarse


@dataclass(frozen=True, eq=False)
class GridPath:
    """Values of a path in R^dim at every node of ``grid``, shape ``(n+1, dim)``."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] != self.grid.n + 1:
            raise ValueError(
                f"path values have shape {values.shape}, expected ({self.grid.n + 1}, dim)"
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.values, axis=0)

    def at(self, t) -> np.ndarray:
        """Piecewise-linear interpolation of the path at times ``t``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.stack(
            [np.interp(t, self.grid.nodes, self.values[:, j]) for j in range(self.dim)], axis=-1
        )

    def scaled(self, factor: float) -> "GridPath":
        return GridPath(self.grid, factor * self.values)
