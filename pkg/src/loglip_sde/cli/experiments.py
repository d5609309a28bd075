# -*- coding: utf-8 -*-
"""Experiment runners behind the CLI subcommands.

Every runner takes the built field (``None`` for field-free kinds), the resolved parameters,
the seed and the worker cap, and returns an :class:`ExperimentOutput`: plot-ready CSV rows
plus a JSON summary.
"""

from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs import estimate_growth, estimate_modulus
from loglip_sde.coeffs.field import CoefficientField
from loglip_sde.exceptions import NumericalFailure
from loglip_sde.ldp import (
    PathEvent,
    euler_closeness,
    exit_tail_report,
    ldp_gap_report,
    rate_functional,
)
from loglip_sde.lyapunov import (
    exit_profile,
    get_profile,
    growth_diverges,
    osgood_diverges,
    sine_series_bound_check,
)
from loglip_sde.paths import Control, TimeGrid, random_controls, sample_brownian
from loglip_sde.sde import SdeRun, detect_lifetime, euler_maruyama, stability_probability
from loglip_sde.skeleton import SkeletonProblem, euler_polygon, solve_skeleton, uniform_convergence_report


class ExperimentOutput(BaseModel):
    header: list[str]
    rows: list[list[Any]]
    summary: dict[str, Any]


@dataclass(frozen=True)
class Experiment:
    kind: str
    needs_field: bool
    run: Callable[[Optional[CoefficientField], dict, int, int], ExperimentOutput]
    description: str = ""


def _x0(field: CoefficientField, params: dict) -> np.ndarray:
    x0 = params.get("x0")
    if x0 is None:
        return np.zeros(field.dim_state)
    return np.broadcast_to(np.asarray(x0, dtype=float), (field.dim_state,)).copy()


def _require(params: dict, name: str, kind: str):
    if params.get(name) is None:
        raise ValueError(f"`{kind}` requires the parameter `{name}`")
    return params[name]


def _event(params: dict, kind: str) -> PathEvent:
    return PathEvent.from_dict(_require(params, "event", kind))


def _from_report(report: BaseModel, exclude: Optional[set] = None) -> ExperimentOutput:
    header, rows = report.csv_rows()
    return ExperimentOutput(header=header, rows=rows, summary=report.model_dump(mode="json", exclude=exclude))


def _trajectory_rows(trial: int, times: np.ndarray, states: np.ndarray) -> list[list]:
    return [[trial, t, *x] for t, x in zip(times.tolist(), states.tolist())]


def run_simulate(field, params, seed, threads) -> ExperimentOutput:
    x0 = _x0(field, params)
    grid = TimeGrid(int(params["n"]), float(params["T"]))
    rows, exits = [], {}
    for trial in range(int(params["trials"])):
        driver = sample_brownian(field.dim_noise, grid, seed, trial)
        trajectory = euler_maruyama(SdeRun(field, float(params["epsilon"]), x0, driver))
        rows.extend(_trajectory_rows(trial, trajectory.times, trajectory.states))
        if trajectory.exploded:
            exits[trial] = trajectory.exit.time
    header = ["trial", "t"] + [f"x{j}" for j in range(field.dim_state)]
    return ExperimentOutput(header=header, rows=rows, summary={"exploded": exits, "label": field.label})


def _skeleton_control(field: CoefficientField, params: dict) -> Control:
    knots = TimeGrid(int(params["knots"]), float(params["T"]))
    if params.get("control") is not None:
        return Control(grid=knots, values=np.asarray(params["control"], dtype=float))
    slope = np.broadcast_to(np.asarray(params.get("slope", 1.0), dtype=float), (field.dim_noise,))
    return Control(grid=knots, values=np.outer(knots.nodes, slope))


def run_skeleton(field, params, seed, threads) -> ExperimentOutput:
    control = _skeleton_control(field, params)
    grid = TimeGrid(int(params["n"]), float(params["T"]))
    solver = params.get("solver", "rk4")
    if solver == "rk4":
        trajectory = solve_skeleton(SkeletonProblem(field, control, _x0(field, params), grid))
    elif solver == "euler":
        trajectory = euler_polygon(field, control.on_grid(grid), _x0(field, params))
    else:
        raise ValueError(f"unknown skeleton solver `{solver}`, expected `rk4` or `euler`")
    header = ["t"] + [f"x{j}" for j in range(field.dim_state)]
    rows = [[t, *x] for t, x in zip(trajectory.times.tolist(), trajectory.states.tolist())]
    summary = {"solver": solver, "exploded": trajectory.exploded, "label": field.label}
    return ExperimentOutput(header=header, rows=rows, summary=summary)


def run_converge(field, params, seed, threads) -> ExperimentOutput:
    knots = TimeGrid(int(params["knots"]), float(params["T"]))
    alpha = float(params["alpha"])
    controls = random_controls(int(params["controls"]), knots, field.dim_noise, alpha, seed)
    report = uniform_convergence_report(
        field, controls, params["n_ladder"], alpha=alpha, x0=_x0(field, params), threads=threads
    )
    return _from_report(report)


def run_lifetime(field, params, seed, threads) -> ExperimentOutput:
    report = detect_lifetime(
        field,
        _x0(field, params),
        horizon=float(params["horizon"]),
        R_ladder=params["R_ladder"],
        n=int(params["n"]),
        epsilon=float(params.get("epsilon", 0.0)),
        seed=seed,
    )
    header = ["R", "tau"]
    rows = [[row.R, row.tau] for row in report.hitting]
    summary = report.model_dump(mode="json")
    summary["lifetime_label"] = report.lifetime_label
    return ExperimentOutput(header=header, rows=rows, summary=summary)


def run_stability(field, params, seed, threads) -> ExperimentOutput:
    report = stability_probability(
        field,
        float(params["epsilon"]),
        _x0(field, params),
        params["delta_ladder"],
        float(params["threshold"]),
        int(params["trials"]),
        int(params["n"]),
        seed,
        T=float(params["T"]),
        threads=threads,
    )
    return _from_report(report)


def run_rate(field, params, seed, threads) -> ExperimentOutput:
    result = rate_functional(
        field,
        _event(params, "rate"),
        int(params["knots"]),
        int(params["restarts"]),
        seed,
        x0=_x0(field, params),
        T=float(params["T"]),
        radius=params.get("radius"),
        threads=threads,
    )
    if not result.feasible:
        raise NumericalFailure(
            f"rate functional infeasible at {result.knots} knots",
            {"residual": result.residual, "tolerance": result.tolerance, "trace": result.model_dump(mode="json")["trace"]},
        )
    return _from_report(result, exclude={"control"})


def run_ldp(field, params, seed, threads) -> ExperimentOutput:
    report = ldp_gap_report(
        field,
        _event(params, "ldp"),
        params["eps_ladder"],
        int(params["trials"]),
        int(params["knots"]),
        seed,
        n=int(params["n"]),
        restarts=int(params.get("restarts", 1)),
        x0=_x0(field, params),
        T=float(params["T"]),
        radius=params.get("radius"),
        threads=threads,
    )
    return _from_report(report)


def run_closeness(field, params, seed, threads) -> ExperimentOutput:
    report = euler_closeness(
        field,
        float(params["epsilon"]),
        params["n_ladder"],
        float(params["delta"]),
        int(params["trials"]),
        seed,
        x0=_x0(field, params),
        T=float(params["T"]),
        threads=threads,
    )
    return _from_report(report)


def run_osgood(field, params, seed, threads) -> ExperimentOutput:
    profile = get_profile(params.get("profile", "log_reciprocal"))
    diagnostic = osgood_diverges(profile, float(params["a"]), params.get("cutoff_ladder"))
    rows = [[rung.delta, rung.integral] for rung in diagnostic.rungs]
    return ExperimentOutput(header=["delta", "integral"], rows=rows, summary=diagnostic.model_dump(mode="json"))


def run_lemma24(field, params, seed, threads) -> ExperimentOutput:
    theta = np.geomspace(float(params["theta_min"]), float(params["theta_max"]), int(params["theta_count"]))
    report = sine_series_bound_check(theta, int(params["K"]), params.get("tolerance"))
    rows = [[t, r] for t, r in zip(report.theta, report.ratio)]
    return ExperimentOutput(
        header=["theta", "ratio"], rows=rows, summary=report.model_dump(mode="json", exclude={"theta", "ratio"})
    )


def run_growth(field, params, seed, threads) -> ExperimentOutput:
    profile = get_profile(params.get("profile", "log_squared_growth"))
    diagnostic = growth_diverges(profile, params.get("R_ladder"))
    rows = [[rung.R, rung.integral] for rung in diagnostic.rungs]
    return ExperimentOutput(header=["R", "integral"], rows=rows, summary=diagnostic.model_dump(mode="json"))


def run_exit_tail(field, params, seed, threads) -> ExperimentOutput:
    report = exit_tail_report(
        field,
        float(params["epsilon"]),
        params["R_ladder"],
        int(params["trials"]),
        int(params["n"]),
        seed,
        profile=exit_profile(params.get("delta0")),
        x0=_x0(field, params),
        T=float(params["T"]),
        threads=threads,
    )
    return _from_report(report)


def run_modulus(field, params, seed, threads) -> ExperimentOutput:
    pair_count = int(params["pair_count"])
    c_sigma, c_drift = estimate_modulus(field, pair_count, seed)
    g_sigma, g_drift = estimate_growth(field, int(params.get("probe_count", pair_count)), seed)
    rows = [["modulus", c_sigma, c_drift], ["growth", g_sigma, g_drift]]
    summary = {"label": field.label, "modulus_class": field.modulus_class.value, "declared_constant": field.declared_constant}
    return ExperimentOutput(header=["estimate", "C_sigma", "C_drift"], rows=rows, summary=summary)


EXPERIMENTS: dict[str, Experiment] = {
    experiment.kind: experiment
    for experiment in (
        Experiment("simulate", True, run_simulate, "Euler-Maruyama trajectories"),
        Experiment("skeleton", True, run_skeleton, "skeleton ODE of a control (RK4 or Euler polygon)"),
        Experiment("converge", True, run_converge, "uniform convergence of the Euler polygon"),
        Experiment("lifetime", True, run_lifetime, "explosion and lifetime detection"),
        Experiment("stability", True, run_stability, "stability in the initial value"),
        Experiment("rate", True, run_rate, "rate functional of a path event"),
        Experiment("ldp", True, run_ldp, "Monte Carlo eps log P against -I"),
        Experiment("closeness", True, run_closeness, "exponential closeness of the Euler scheme"),
        Experiment("osgood", False, run_osgood, "Osgood test of a growth profile near 0"),
        Experiment("lemma24", False, run_lemma24, "bound of the absolute sine series"),
        Experiment("growth", False, run_growth, "Osgood test of a growth profile at infinity"),
        Experiment("exit_tail", True, run_exit_tail, "exit tails against the exit profile"),
        Experiment("modulus", True, run_modulus, "empirical modulus and growth constants"),
    )
}
