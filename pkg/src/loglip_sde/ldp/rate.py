# -*- coding: utf-8 -*-
"""The rate functional ``I(A) = inf {e(g) / 2 : F(g) in A}`` by action minimisation.

The knot values of a piecewise-linear control are the unknowns. The skeleton is the Euler
polygon of the control on a mesh with ``substeps`` points per knot segment, the event
constraint enters as a quadratic penalty whose weight grows stage by stage, and gradients
come from the adjoint of the Euler recursion.
"""

from typing import Optional

import numpy as np
from pydantic import BaseModel
from scipy.optimize import minimize

from loglip_sde.coeffs.field import CoefficientField, check_finite_point
from loglip_sde.coeffs.truncation import truncate_field
from loglip_sde.ldp.events import PathEvent
from loglip_sde.paths.control import Control, energy
from loglip_sde.paths.grid import TimeGrid
from loglip_sde.skeleton.solvers import ExplosionGuard, euler_batch
from loglip_sde.utils.log import get_logger, report
from loglip_sde.utils.parallel import map_chunks
from loglip_sde.utils.protocol import get_criteria
from loglip_sde.utils.rng import generator

logger = get_logger(__name__)

# objective returned for controls whose skeleton explodes
_EXPLODED_OBJECTIVE = 1.0e30


class StageRecord(BaseModel):
    mu: float
    objective: float
    residual: float
    iterations: int
    converged: bool


class RestartRecord(BaseModel):
    restart: int
    rate: float
    residual: float
    stages: list[StageRecord]


class RateResult(BaseModel):
    """Best minimiser over the restarts.

    ``rate`` is ``energy(control) / 2``. ``status`` is ``"ok"`` when the residual is within
    ``tolerance`` and ``"infeasible"`` otherwise, which only states that no feasible control
    was found at this resolution.
    """

    rate: float
    knots: int
    T: float
    control: list[list[float]]
    residual: float
    tolerance: float
    status: str
    restart: int
    trace: list[RestartRecord]
    left_radius: bool = False

    @property
    def feasible(self) -> bool:
        return self.status == "ok"

    def to_control(self) -> Control:
        return Control(grid=TimeGrid(self.knots, self.T), values=np.asarray(self.control))

    def csv_rows(self) -> tuple[list[str], list[list]]:
        grid = TimeGrid(self.knots, self.T)
        header = ["t"] + [f"g{j}" for j in range(len(self.control[0]))] + ["I", "residual", "status"]
        rows = [
            [t, *g, self.rate, self.residual, self.status]
            for t, g in zip(grid.nodes.tolist(), self.control)
        ]
        return header, rows


class _Objective:
    """``e(g) / 2 + mu * P(F(g))`` and its gradient in the knot values ``G_1..G_K``."""

    def __init__(self, field: CoefficientField, event: PathEvent, x0: np.ndarray, knots: TimeGrid, substeps: int):
        self.field = field
        self.event = event
        self.x0 = x0
        self.knots = knots
        self.substeps = substeps
        self.solver = knots.refine(substeps)
        self.guard = ExplosionGuard.default()
        self.mu = 0.0

    def _values(self, flat: np.ndarray) -> np.ndarray:
        m = self.field.dim_noise
        return np.vstack([np.zeros((1, m)), flat.reshape(self.knots.n, m)])

    def skeleton(self, flat: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
        """Solver-mesh driver increments, skeleton states and whether the skeleton exploded."""
        control = Control(grid=self.knots, values=self._values(flat))
        path = control.on_grid(self.solver).values
        states, exit_index = euler_batch(self.field, path[None], self.x0, self.solver.dt, self.guard)
        return np.diff(path, axis=0), states[0], bool(exit_index[0] >= 0)

    def residual(self, flat: np.ndarray) -> float:
        _, states, exploded = self.skeleton(flat)
        if exploded:
            return np.inf
        return self.event.residual(states, self.solver.nodes)

    def __call__(self, flat: np.ndarray) -> tuple[float, np.ndarray]:
        values = self._values(flat)
        slopes = np.diff(values, axis=0) / self.knots.dt
        action = 0.5 * float(np.sum(slopes**2) * self.knots.dt)
        # d(action)/dG_k = slope_k - slope_{k+1}
        action_grad = slopes - np.vstack([slopes[1:], np.zeros((1, slopes.shape[1]))])

        increments, states, exploded = self.skeleton(flat)
        if exploded:
            return _EXPLODED_OBJECTIVE, action_grad.ravel()
        penalty, state_grad = self.event.penalty(states, self.solver.nodes)
        if penalty == 0.0:
            return action, action_grad.ravel()

        grad = action_grad + self.mu * self._adjoint(states, increments, state_grad)
        return action + self.mu * penalty, grad.ravel()

    def _adjoint(self, states: np.ndarray, increments: np.ndarray, state_grad: np.ndarray) -> np.ndarray:
        """Gradient of ``P`` in the knot values, backwards through the Euler recursion."""
        field, h = self.field, self.solver.dt
        nodes = states[:-1]
        diffusion = field.diffusion(nodes)
        # dx_{j+1}/dx_j = I + h Db(x_j) + sum_l D sigma_{.l}(x_j) dw_{j,l}
        step = (
            np.eye(field.dim_state)
            + h * field.drift_jac(nodes)
            + np.einsum("jild,jl->jid", field.diffusion_jac(nodes), increments)
        )

        lam = state_grad[-1].copy()
        increment_grad = np.empty_like(increments)
        for j in range(len(nodes) - 1, -1, -1):
            increment_grad[j] = diffusion[j].T @ lam
            lam = state_grad[j] + step[j].T @ lam

        # every solver increment is (G_k - G_{k-1}) / substeps on knot segment k
        segment_grad = increment_grad.reshape(self.knots.n, self.substeps, -1).sum(axis=1) / self.substeps
        return segment_grad - np.vstack([segment_grad[1:], np.zeros((1, segment_grad.shape[1]))])


def _localization(field: CoefficientField, radius: Optional[float]) -> CoefficientField:
    """The field the optimiser runs on: unbounded fields are truncated at the declared radius."""
    if radius is None:
        if not field.is_bounded:
            raise ValueError(
                f"field `{field.label}` is not bounded: truncate it or declare the optimiser radius"
            )
        return field
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if field.is_bounded:
        return field
    return truncate_field(field, radius)


def rate_functional(
    field: CoefficientField,
    event: PathEvent,
    knots: int,
    restarts: int,
    seed: int,
    x0=None,
    T: float = 1.0,
    radius: Optional[float] = None,
    threads: int = 1,
) -> RateResult:
    """Minimise ``e(g) / 2`` over controls with ``F(g)`` in ``event``.

    Restart 0 starts from the zero control, the others from seeded Gaussian perturbations
    of the knot values. Every restart runs the whole penalty schedule, warm-starting each
    stage from the previous minimiser. The best feasible restart wins; without a feasible
    one, the smallest residual.

    A declared ``radius`` stands in for boundedness: an unbounded field is replaced by its
    truncation at that radius, so the result is the rate of the truncated field.
    ``left_radius`` flags a minimising skeleton that leaves the ball, where the two fields
    may differ.
    """
    if int(knots) != knots or knots < 1:
        raise ValueError(f"knots must be a positive integer, got {knots}")
    if int(restarts) != restarts or restarts < 1:
        raise ValueError(f"restarts must be a positive integer, got {restarts}")
    field = _localization(field, radius)
    x0 = check_finite_point(np.zeros(field.dim_state) if x0 is None else x0, "x0")
    if x0.shape != (field.dim_state,):
        raise ValueError(f"x0 has shape {x0.shape}, field expects ({field.dim_state},)")

    criteria = get_criteria("rate")
    tolerance = float(criteria["residual_tolerance"])
    schedule = [
        float(criteria["penalty_initial"]) * float(criteria["penalty_factor"]) ** stage
        for stage in range(int(criteria["penalty_stages"]))
    ]
    knot_grid = TimeGrid(int(knots), T)
    size = knot_grid.n * field.dim_noise

    def _restart(chunk: range) -> tuple[np.ndarray, RestartRecord]:
        index = chunk.start
        # a fresh objective per restart keeps the penalty weight private to the worker
        objective = _Objective(field, event, x0, knot_grid, int(criteria["substeps"]))
        if index == 0:
            flat = np.zeros(size)
        else:
            flat = float(criteria["restart_scale"]) * generator(seed, index, tag="rate").standard_normal(size)

        stages = []
        for mu in schedule:
            objective.mu = mu
            result = minimize(
                objective,
                flat,
                jac=True,
                method="L-BFGS-B",
                options={"maxiter": int(criteria["maxiter"])},
            )
            flat = result.x
            stages.append(
                StageRecord(
                    mu=mu,
                    objective=float(result.fun),
                    residual=objective.residual(flat),
                    iterations=int(result.nit),
                    converged=bool(result.success),
                )
            )
            if stages[-1].residual == 0.0:
                # the penalty vanishes with its gradient, heavier weights change nothing
                break

        control = Control(grid=knot_grid, values=objective._values(flat))
        record = RestartRecord(
            restart=index, rate=0.5 * energy(control), residual=stages[-1].residual, stages=stages
        )
        return control.values, record

    outcomes = map_chunks(_restart, int(restarts), 1, threads)
    records = [record for _, record in outcomes]

    feasible = [r for r in records if r.residual <= tolerance]
    if feasible:
        best = min(feasible, key=lambda r: (r.rate, r.restart))
    else:
        best = min(records, key=lambda r: (r.residual, r.restart))
    values = outcomes[best.restart][0]
    status = "ok" if feasible else "infeasible"

    left_radius = False
    if radius is not None:
        final = _Objective(field, event, x0, knot_grid, int(criteria["substeps"]))
        _, states, _ = final.skeleton(values[1:].ravel())
        left_radius = bool(np.max(np.linalg.norm(states, axis=-1)) > radius)
        if left_radius:
            logger.warning(
                f"the minimising skeleton leaves the ball of radius {radius}; "
                "outside it the truncated field differs from the original one"
            )

    if status == "infeasible":
        logger.warning(
            f"rate functional for `{event.kind.value}` infeasible at {knots} knots: "
            f"residual {best.residual!r} > {tolerance!r}"
        )
    else:
        report(logger, f"rate functional for `{event.kind.value}` with {knots} knots: I = {best.rate!r}")

    return RateResult(
        rate=best.rate,
        knots=int(knots),
        T=float(T),
        control=values.tolist(),
        residual=best.residual,
        tolerance=tolerance,
        status=status,
        restart=best.restart,
        trace=records,
        left_radius=left_radius,
    )
