# -*- coding: utf-8 -*-
"""The Euler polygon recursion and the RK4 skeleton solver.

``euler_batch`` is the one node recursion behind both the polygon map F_n and the
Euler-Maruyama scheme; it advances a batch of states along a batch of driver paths.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from loglip_sde.coeffs.field import CoefficientField, check_finite_point
from loglip_sde.paths.control import Control, energy
from loglip_sde.paths.grid import GridPath, TimeGrid
from loglip_sde.paths.trajectory import ExitRecord, Trajectory
from loglip_sde.utils.log import get_logger
from loglip_sde.utils.protocol import get_criteria

logger = get_logger(__name__)


@dataclass(frozen=True)
class ExplosionGuard:
    """A step explodes when the new norm exceeds ``guard`` or ``cap * max(|x|, 1)``."""

    guard: float
    cap: float

    @classmethod
    def default(cls, guard: float | None = None, cap: float | None = None) -> "ExplosionGuard":
        criteria = get_criteria("solver")
        return cls(
            guard=float(criteria["explosion_guard"] if guard is None else guard),
            cap=float(criteria["growth_cap"] if cap is None else cap),
        )

    def breached(self, previous: np.ndarray, current: np.ndarray) -> np.ndarray:
        prev_norm = np.linalg.norm(previous, axis=-1)
        new_norm = np.linalg.norm(current, axis=-1)
        return (
            ~np.isfinite(new_norm)
            | (new_norm > self.guard)
            | (new_norm > self.cap * np.maximum(prev_norm, 1.0))
        )


def _apply(diffusion: np.ndarray, increment: np.ndarray) -> np.ndarray:
    # sigma(x) dw row by row, elementwise so every row sums in the same order
    return (diffusion * increment[:, None, :]).sum(axis=2)


def euler_batch(
    field: CoefficientField,
    paths: np.ndarray,
    x0: np.ndarray,
    dt: float,
    guard: ExplosionGuard,
) -> tuple[np.ndarray, np.ndarray]:
    """Node recursion ``x_{k+1} = x_k + b(x_k) dt + sigma(x_k) (w_{k+1} - w_k)``.

    ``paths`` has shape ``(B, n+1, m)`` and ``x0`` shape ``(d,)`` or ``(B, d)``. Returns the
    states ``(B, n+1, d)`` and the exit node of every row (``-1`` when it never exploded).
    States from the exit node on are ``inf``.
    """
    count, nodes, _ = paths.shape
    increments = np.diff(paths, axis=1)
    x = np.array(np.broadcast_to(x0, (count, field.dim_state)), dtype=float)

    states = np.empty((count, nodes, field.dim_state))
    states[:, 0] = x
    exit_index = np.full(count, -1)
    alive = np.ones(count, dtype=bool)

    for k in range(nodes - 1):
        new = x + field.drift(x) * dt + _apply(field.diffusion(x), increments[:, k])
        exploded = alive & guard.breached(x, new)
        if exploded.any():
            exit_index[exploded] = k + 1
            alive &= ~exploded
        states[:, k + 1] = np.where(alive[:, None], new, np.inf)
        if not alive.any():
            states[:, k + 2 :] = np.inf
            break
        # dead rows keep their last finite state so the coefficients stay finite
        x = np.where(alive[:, None], new, x)

    return states, exit_index


def hitting_times(states: np.ndarray, times: np.ndarray, levels) -> list[dict]:
    """First node time with ``|x| >= R`` for every row and level; unreached levels are absent."""
    norms = np.linalg.norm(states, axis=-1)
    records = [dict() for _ in range(states.shape[0])]
    for R in levels:
        reached = norms >= R
        first = np.argmax(reached, axis=1)
        for row in np.flatnonzero(reached.any(axis=1)):
            records[row][float(R)] = float(times[first[row]])
    return records


def to_trajectory(
    grid: TimeGrid, states: np.ndarray, exit_index: int, guard: ExplosionGuard, levels=()
) -> Trajectory:
    """Single-row result of :func:`euler_batch` as a :class:`Trajectory`."""
    times = grid.nodes
    hits = hitting_times(states[None], times, levels)[0] if len(levels) else {}
    if exit_index < 0:
        return Trajectory(grid=grid, states=states, hitting_times=hits)

    exit = ExitRecord(index=int(exit_index), time=float(times[exit_index]), guard=guard.guard)
    # levels passed only at the explosion count as hit at the exit node
    for R in levels:
        hits.setdefault(float(R), exit.time)
    return Trajectory(grid=grid, states=states[:exit_index], exit=exit, hitting_times=hits)


def _polygon_dense(
    field: CoefficientField, driver: GridPath, states: np.ndarray, points: int
) -> tuple[np.ndarray, np.ndarray]:
    """Between-node polygon ``x_k + b(x_k)(t - t_k) + sigma(x_k)(w(t) - w(t_k))``."""
    grid = driver.grid
    count = states.shape[0] - 1
    frac = np.arange(points) / points
    times = (grid.nodes[:count, None] + frac[None, :] * grid.dt).ravel()
    times = np.append(times, grid.nodes[count])

    segment = np.append(np.repeat(np.arange(count), points), count - 1)
    x_k = states[segment]
    w_t = driver.at(times)
    w_k = driver.values[segment]
    drift = field.drift(x_k)
    diffusion = field.diffusion(x_k)
    values = x_k + drift * (times - grid.nodes[segment])[:, None] + _apply(diffusion, w_t - w_k)
    # the last point is the last node itself
    values[-1] = states[count]
    return times, values


def euler_polygon(
    field: CoefficientField,
    driver: GridPath,
    x0,
    dense: int = 0,
    guard: Optional[ExplosionGuard] = None,
    levels=(),
) -> Trajectory:
    """The polygon map F_n applied to the driver path ``omega``.

    With ``dense = k > 0`` the trajectory also carries the polygon at ``k`` equally spaced
    points per segment; the node values do not depend on ``dense``.
    """
    x0 = check_finite_point(x0, "x0")
    if driver.dim != field.dim_noise:
        raise ValueError(f"driver has dimension {driver.dim}, field expects m = {field.dim_noise}")
    if x0.shape != (field.dim_state,):
        raise ValueError(f"x0 has shape {x0.shape}, field expects ({field.dim_state},)")
    guard = guard or ExplosionGuard.default()

    states, exit_index = euler_batch(field, driver.values[None], x0, driver.grid.dt, guard)
    trajectory = to_trajectory(driver.grid, states[0], int(exit_index[0]), guard, levels)
    if trajectory.exploded:
        logger.warning(f"euler polygon of `{field.label}` exploded at t = {trajectory.exit.time}")

    if dense > 0 and trajectory.states.shape[0] > 1:
        dense_path = _polygon_dense(field, driver, trajectory.states, int(dense))
        return Trajectory(
            grid=trajectory.grid,
            states=trajectory.states,
            exit=trajectory.exit,
            hitting_times=trajectory.hitting_times,
            dense=dense_path,
        )
    return trajectory


@dataclass(frozen=True, eq=False)
class SkeletonProblem:
    """The controlled ODE ``x' = b(x) + sigma(x) g'`` from ``x0`` on the solver ``grid``."""

    field: CoefficientField
    control: Control
    x0: np.ndarray
    grid: TimeGrid

    def __post_init__(self):
        x0 = check_finite_point(self.x0, "x0")
        if x0.shape != (self.field.dim_state,):
            raise ValueError(f"x0 has shape {x0.shape}, field expects ({self.field.dim_state},)")
        object.__setattr__(self, "x0", x0)
        if self.control.grid.T != self.grid.T:
            raise ValueError(
                f"control horizon {self.control.grid.T} differs from solver horizon {self.grid.T}"
            )
        if self.control.m != self.field.dim_noise:
            raise ValueError(
                f"control has dimension {self.control.m}, field expects m = {self.field.dim_noise}"
            )
        if self.grid.n % self.control.grid.n:
            raise ValueError(
                f"solver mesh n={self.grid.n} is not a multiple of the control mesh n={self.control.grid.n}"
            )


def solve_skeleton(p: SkeletonProblem, guard: Optional[ExplosionGuard] = None) -> Trajectory:
    """Classical RK4 on the solver mesh, ``g'`` constant on every control segment."""
    if not np.isfinite(energy(p.control)):
        raise ValueError("control energy is not finite")
    guard = guard or ExplosionGuard.default()

    field, h = p.field, p.grid.dt
    per_segment = p.grid.n // p.control.grid.n
    slopes = np.repeat(p.control.slopes, per_segment, axis=0)

    def rhs(x, v):
        return field.drift(x) + _apply(field.diffusion(x), v)

    states = np.empty((p.grid.n + 1, field.dim_state))
    states[0] = p.x0
    x = p.x0[None, :]
    for k in range(p.grid.n):
        v = slopes[k : k + 1]
        k1 = rhs(x, v)
        k2 = rhs(x + 0.5 * h * k1, v)
        k3 = rhs(x + 0.5 * h * k2, v)
        k4 = rhs(x + h * k3, v)
        new = x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if guard.breached(x, new)[0]:
            logger.warning(f"skeleton of `{field.label}` exploded at t = {p.grid.nodes[k + 1]}")
            exit = ExitRecord(index=k + 1, time=float(p.grid.nodes[k + 1]), guard=guard.guard)
            return Trajectory(grid=p.grid, states=states[: k + 1], exit=exit)
        states[k + 1] = new[0]
        x = new

    return Trajectory(grid=p.grid, states=states)
