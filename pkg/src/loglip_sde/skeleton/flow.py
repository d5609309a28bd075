# -*- coding: utf-8 -*-
"""Flow experiments of the uncontrolled ODE: non-confluence and continuity in x0."""

from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs.field import CoefficientField, check_finite_point
from loglip_sde.paths.control import Control
from loglip_sde.paths.grid import TimeGrid
from loglip_sde.paths.trajectory import sup_distance
from loglip_sde.skeleton.solvers import SkeletonProblem, solve_skeleton
from loglip_sde.utils.log import get_logger

logger = get_logger(__name__)


class NonconfluenceReport(BaseModel):
    min_separation: Optional[float]
    argmin_time: Optional[float]
    initial_separation: float
    passed: bool
    inconclusive: bool
    message: Optional[str] = None


class FlowContinuityRow(BaseModel):
    offset: float
    sup_distance: float


class FlowContinuityReport(BaseModel):
    rows: list[FlowContinuityRow]
    monotone: bool


def ode_flow(field: CoefficientField, x0, grid: TimeGrid):
    """Solution of ``x' = b(x)`` (zero control) on ``grid``."""
    control = Control.zero(TimeGrid(1, grid.T), field.dim_noise)
    return solve_skeleton(SkeletonProblem(field, control, x0, grid))


def ode_nonconfluence(field: CoefficientField, x0, y0, grid: TimeGrid) -> NonconfluenceReport:
    """Minimum over the nodes of ``|X(t, x0) - X(t, y0)|`` for two distinct starting points."""
    x0 = check_finite_point(x0, "x0")
    y0 = check_finite_point(y0, "y0")
    initial = float(np.linalg.norm(x0 - y0))
    if initial == 0:
        raise ValueError("x0 and y0 must differ")

    a, b = ode_flow(field, x0, grid), ode_flow(field, y0, grid)
    if a.exploded or b.exploded:
        which = "x0" if a.exploded else "y0"
        logger.warning(f"flow from {which} exploded, non-confluence test inconclusive")
        return NonconfluenceReport(
            min_separation=None,
            argmin_time=None,
            initial_separation=initial,
            passed=False,
            inconclusive=True,
            message=f"flow from {which} exploded",
        )

    separation = np.linalg.norm(a.states - b.states, axis=1)
    k = int(np.argmin(separation))
    return NonconfluenceReport(
        min_separation=float(separation[k]),
        argmin_time=float(grid.nodes[k]),
        initial_separation=initial,
        passed=bool(separation[k] > 0),
        inconclusive=False,
    )


def flow_continuity(
    field: CoefficientField, x0, offsets: Sequence, grid: TimeGrid
) -> FlowContinuityReport:
    """Sup-distance of the flows from ``x0 + offset`` and ``x0`` along a shrinking ladder.

    Scalar offsets are applied along the first coordinate.
    """
    x0 = check_finite_point(x0, "x0")
    base = ode_flow(field, x0, grid)

    rows = []
    for offset in offsets:
        shift = np.asarray(offset, dtype=float)
        if shift.ndim == 0:
            shift = float(shift) * np.eye(field.dim_state)[0]
        other = ode_flow(field, x0 + shift, grid)
        rows.append(
            FlowContinuityRow(offset=float(np.linalg.norm(shift)), sup_distance=sup_distance(base, other))
        )

    distances = np.array([row.sup_distance for row in rows])
    return FlowContinuityReport(rows=rows, monotone=bool(np.all(np.diff(distances) <= 0)))
