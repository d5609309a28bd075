# -*- coding: utf-8 -*-
"""Uniform convergence of the Euler polygon to the skeleton over a set of controls."""

from typing import Sequence

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs.field import CoefficientField
from loglip_sde.exceptions import NumericalFailure
from loglip_sde.paths.control import Control, energy
from loglip_sde.paths.grid import TimeGrid
from loglip_sde.skeleton.solvers import SkeletonProblem, euler_polygon, solve_skeleton
from loglip_sde.utils.log import get_logger, report
from loglip_sde.utils.parallel import map_chunks
from loglip_sde.utils.protocol import get_criteria

logger = get_logger(__name__)


class ConvergenceRow(BaseModel):
    n: int
    sup_error: float
    max_step_deviation: float
    step_bound: float


class UniformConvergenceReport(BaseModel):
    field: str
    alpha: float
    control_count: int
    reference_n: int
    rows: list[ConvergenceRow]
    decreasing: bool
    strictly_decreasing: bool
    step_bound_holds: bool
    note: str

    def csv_rows(self) -> tuple[list[str], list[list]]:
        return ["n", "sup_error"], [[row.n, row.sup_error] for row in self.rows]


def _step_deviation(field: CoefficientField, trajectory) -> tuple[float, float, float]:
    """Largest ``|F_n(t) - F_n(t_k)|`` on the dense polygon, and sup |b|, sup ||sigma|| at the nodes."""
    times, values = trajectory.dense
    grid = trajectory.grid
    count = trajectory.states.shape[0] - 1
    points = (len(times) - 1) // count
    segment = np.append(np.repeat(np.arange(count), points), count - 1)
    deviation = np.linalg.norm(values - trajectory.states[segment], axis=1).max()

    nodes = trajectory.states[:-1]
    sup_b = np.linalg.norm(field.drift(nodes), axis=1).max()
    sup_sigma = np.linalg.norm(field.diffusion(nodes), axis=(1, 2)).max()
    return float(deviation), float(sup_b), float(sup_sigma)


def uniform_convergence_report(
    field: CoefficientField,
    controls: Sequence[Control],
    n_ladder: Sequence[int],
    alpha: float | None = None,
    x0=None,
    threads: int = 1,
    dense: int = 8,
) -> UniformConvergenceReport:
    """Sup over controls of ``sup_k |F_n(g)(t_k) - F(g)(t_k)|`` for every n of the ladder.

    ``F(g)`` is the RK4 skeleton on a mesh ``reference_factor`` times the largest n. The
    step-size bound ``|F_n(g)(t) - F_n(g)(t_k)| <= (sup|b| + sup||sigma|| alpha**0.5)(T/n)**0.5``
    is checked on the dense polygon of every control.
    """
    if not field.is_bounded:
        raise ValueError(
            f"field `{field.label}` is not bounded, truncate it with `truncate_field` first"
        )
    if not controls:
        raise ValueError("at least one control is required")
    n_ladder = [int(n) for n in n_ladder]
    if any(b <= a for a, b in zip(n_ladder[:-1], n_ladder[1:])):
        raise ValueError(f"n_ladder must be strictly increasing, got {n_ladder}")

    energies = np.array([energy(g) for g in controls])
    alpha = float(energies.max() if alpha is None else alpha)
    if np.any(energies > alpha * (1 + 1e-12)):
        raise ValueError(f"a control has energy {energies.max()} above alpha = {alpha}")

    T = controls[0].grid.T
    reference = TimeGrid(int(get_criteria("solver")["reference_factor"]) * n_ladder[-1], T)
    for n in n_ladder:
        reference.stride_to(TimeGrid(n, T))
    x0 = np.zeros(field.dim_state) if x0 is None else np.asarray(x0, dtype=float)

    def _errors(indices: range) -> list[list[tuple[float, float]]]:
        results = []
        for i in indices:
            g = controls[i]
            truth = solve_skeleton(SkeletonProblem(field, g, x0, reference))
            if truth.exploded:
                raise NumericalFailure(
                    f"reference skeleton of control {i} exploded",
                    {"control": i, "exit_time": truth.exit.time, "reference_n": reference.n},
                )
            per_n = []
            for n in n_ladder:
                grid = TimeGrid(n, T)
                polygon = euler_polygon(field, g.on_grid(grid), x0, dense=dense)
                error = np.linalg.norm(
                    polygon.states - truth.states[:: reference.stride_to(grid)], axis=1
                ).max()
                deviation, sup_b, sup_sigma = _step_deviation(field, polygon)
                bound = (sup_b + sup_sigma * np.sqrt(alpha)) * np.sqrt(grid.dt)
                per_n.append((float(error), deviation, float(bound)))
            results.append(per_n)
        return results

    chunks = map_chunks(_errors, len(controls), 1, threads)
    table = np.array([per_n for chunk in chunks for per_n in chunk])  # (controls, n, 3)

    rows = [
        ConvergenceRow(
            n=n,
            sup_error=float(table[:, j, 0].max()),
            max_step_deviation=float(table[:, j, 1].max()),
            step_bound=float(table[:, j, 2].max()),
        )
        for j, n in enumerate(n_ladder)
    ]
    errors = np.array([row.sup_error for row in rows])
    step_ok = bool(np.all(table[:, :, 1] <= table[:, :, 2] * (1 + 1e-12)))

    result = UniformConvergenceReport(
        field=field.label,
        alpha=alpha,
        control_count=len(controls),
        reference_n=reference.n,
        rows=rows,
        decreasing=bool(errors[-1] < errors[0]) or bool(errors[0] == 0.0),
        strictly_decreasing=bool(np.all(np.diff(errors) < 0)),
        step_bound_holds=step_ok,
        note=(
            f"supremum over {len(controls)} sampled controls with e(g) <= {alpha}, "
            "not over the whole energy ball"
        ),
    )
    if not result.decreasing:
        logger.warning(f"sup errors of `{field.label}` do not decrease along {n_ladder}")
    report(logger, f"uniform convergence of `{field.label}`: {errors.tolist()}")
    return result
