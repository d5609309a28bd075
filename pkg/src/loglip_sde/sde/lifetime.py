# -*- coding: utf-8 -*-
"""Explosion and lifetime detection from the hitting times of an increasing level ladder."""

from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs.field import CoefficientField
from loglip_sde.paths.brownian import sample_brownian
from loglip_sde.paths.grid import GridPath, TimeGrid
from loglip_sde.skeleton.solvers import ExplosionGuard, euler_polygon
from loglip_sde.utils.log import get_logger, report

logger = get_logger(__name__)


class HittingRow(BaseModel):
    R: float
    tau: Optional[float]


class LifetimeReport(BaseModel):
    exploded: bool
    lifetime: Optional[float]  # None means "survived to the horizon"
    horizon: float
    n: int
    hitting: list[HittingRow]
    final_state: Optional[list[float]]

    @property
    def lifetime_label(self) -> str:
        return f"{self.lifetime!r}" if self.exploded else f">= {self.horizon!r}"


def _extrapolate_lifetime(levels: np.ndarray, taus: np.ndarray) -> float:
    """Intercept of the least-squares line of tau_R against 1/log R over the upper half."""
    upper = slice(len(levels) // 2, None)
    slope, intercept = np.polyfit(1.0 / np.log(levels[upper]), taus[upper], 1)
    return float(max(intercept, taus[-1]))


def detect_lifetime(
    field: CoefficientField,
    x0,
    horizon: float,
    R_ladder: Sequence[float],
    n: int,
    epsilon: float = 0.0,
    seed: int = 0,
    trial: int = 0,
) -> LifetimeReport:
    """Run the Euler scheme to ``horizon`` and decide explosion from the hitting times.

    Explosion is declared when every level is reached before the horizon and the gaps
    between consecutive hitting times do not grow. With ``epsilon > 0`` the run is driven
    by the Brownian path of ``(seed, trial)``, otherwise it solves the ODE.
    """
    levels = np.asarray(R_ladder, dtype=float)
    if levels.ndim != 1 or levels.size < 4:
        raise ValueError("R_ladder needs at least 4 rungs")
    if np.any(np.diff(levels) <= 0) or levels[0] <= 1:
        raise ValueError("R_ladder must be strictly increasing and above 1")
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")

    grid = TimeGrid(n, horizon)
    default = ExplosionGuard.default()
    guard = ExplosionGuard(guard=max(default.guard, 10 * levels[-1]), cap=default.cap)

    if epsilon > 0:
        driver = sample_brownian(field.dim_noise, grid, seed, trial).scaled(np.sqrt(epsilon))
    else:
        driver = GridPath(grid, np.zeros((n + 1, field.dim_noise)))
    trajectory = euler_polygon(field, driver, x0, guard=guard, levels=levels)

    taus = np.array([trajectory.hitting_times.get(float(R), np.nan) for R in levels])
    reached = np.isfinite(taus) & (taus < horizon)
    exploded = bool(np.all(reached) and np.all(np.diff(np.diff(taus)) <= 0))

    lifetime = _extrapolate_lifetime(levels, taus) if exploded else None
    if np.all(reached) and not exploded:
        logger.warning("every level was reached but the hitting times do not settle")

    result = LifetimeReport(
        exploded=exploded,
        lifetime=lifetime,
        horizon=float(horizon),
        n=int(n),
        hitting=[
            HittingRow(R=R, tau=None if np.isnan(t) else float(t)) for R, t in zip(levels, taus)
        ],
        final_state=None if trajectory.exploded else trajectory.final.tolist(),
    )
    report(logger, f"lifetime of `{field.label}` from {list(np.atleast_1d(x0))}: {result.lifetime_label}")
    return result
