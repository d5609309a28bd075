# -*- coding: utf-8 -*-
"""Solution paths and the sup-distance between them."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from loglip_sde.paths.grid import GridPath, TimeGrid, common_grid


@dataclass(frozen=True)
class ExitRecord:
    """First node where the state left the explosion guard."""

    index: int
    time: float
    guard: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States ``x(t_k)``; an explosion truncates them before the exit node.

    ``hitting_times`` maps levels R to the first node time with ``|x| >= R`` (levels never
    reached are absent). ``dense`` holds ``(times, states)`` of the between-node polygon
    when requested.
    """

    grid: TimeGrid
    states: np.ndarray
    exit: Optional[ExitRecord] = None
    hitting_times: dict = field(default_factory=dict)
    dense: Optional[tuple[np.ndarray, np.ndarray]] = None

    def __post_init__(self):
        states = np.asarray(self.states, dtype=float)
        if states.ndim == 1:
            states = states[:, None]
        expected = self.grid.n + 1 if self.exit is None else self.exit.index
        if states.shape[0] != expected:
            raise ValueError(
                f"trajectory has {states.shape[0]} states, expected {expected} on this grid"
            )
        object.__setattr__(self, "states", states)

    @property
    def exploded(self) -> bool:
        return self.exit is not None

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.grid.nodes[: self.states.shape[0]]

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def as_path(self) -> GridPath:
        if self.exploded:
            raise ValueError(f"trajectory exploded at t = {self.exit.time}")
        return GridPath(self.grid, self.states)


def restrict(path, grid: TimeGrid):
    """The path on a coarser grid whose nodes are a subset of its own.

    Works for :class:`GridPath` (and subclasses, which keep their extra fields) and for
    :class:`Trajectory`, which keeps its exit record when the exit node survives.
    """
    stride = path.grid.stride_to(grid)

    if isinstance(path, Trajectory):
        states = path.states[::stride]
        exit = None
        if path.exploded:
            # the first coarse node at or after the fine exit node
            index = -(-path.exit.index // stride)
            exit = ExitRecord(index=index, time=grid.nodes[index], guard=path.exit.guard)
            states = states[:index]
        return Trajectory(grid=grid, states=states, exit=exit, hitting_times=dict(path.hitting_times))

    kwargs = {
        name: getattr(path, name)
        for name in path.__dataclass_fields__
        if name not in ("grid", "values")
    }
    return type(path)(grid=grid, values=path.values[::stride], **kwargs)


def sup_distance(a: Trajectory, b: Trajectory) -> float:
    """Largest Euclidean distance over the nodes both trajectories share.

    Grids must coincide or be nested. An exploded trajectory is at infinite distance.
    """
    grid = common_grid(a.grid, b.grid)
    if a.dim != b.dim:
        raise ValueError(f"trajectories live in different dimensions {a.dim} and {b.dim}")
    if a.exploded or b.exploded:
        return float("inf")

    xa = a.states[:: a.grid.stride_to(grid)]
    xb = b.states[:: b.grid.stride_to(grid)]
    return float(np.max(np.linalg.norm(xa - xb, axis=1)))
