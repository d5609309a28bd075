# -*- coding: utf-8 -*-
"""Exponential closeness of the Euler scheme to a bridge-refined reference run."""

from typing import Sequence

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs.field import CoefficientField, check_finite_point
from loglip_sde.sde.coupling import non_increasing_within, sup_gap
from loglip_sde.sde.euler import coupled_ladder_paths, run_trials
from loglip_sde.skeleton.solvers import ExplosionGuard, euler_batch
from loglip_sde.utils.log import get_logger, report

logger = get_logger(__name__)

REFERENCE_FACTOR = 16


class ClosenessRow(BaseModel):
    n: int
    trials: int
    exceed: int
    probability: float
    stderr: float


class ClosenessReport(BaseModel):
    epsilon: float
    delta: float
    n_ref: int
    seed: int
    rows: list[ClosenessRow]
    non_increasing: bool

    def csv_rows(self) -> tuple[list[str], list[list]]:
        return (
            ["n", "trials", "exceed", "probability", "stderr"],
            [[r.n, r.trials, r.exceed, r.probability, r.stderr] for r in self.rows],
        )


def euler_closeness(
    field: CoefficientField,
    epsilon: float,
    n_ladder: Sequence[int],
    delta: float,
    trials: int,
    seed: int,
    x0=None,
    T: float = 1.0,
    threads: int = 1,
) -> ClosenessReport:
    """Fraction of trials with ``max |X_ref - X_n| > delta`` over the nodes of mesh n.

    ``X_ref`` runs on ``16 * max(n_ladder)`` nodes, driven by the bridge refinement of the
    same Brownian paths, so it agrees with ``X_n`` in law and is coupled to it pathwise.
    """
    if not field.is_bounded:
        raise ValueError(f"field `{field.label}` is not bounded, truncate it first")
    if not 0 < delta < np.exp(-1):
        raise ValueError(f"delta must lie in (0, 1/e), got {delta}")
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    n_ladder = [int(n) for n in n_ladder]
    if not n_ladder or any(b <= a for a, b in zip(n_ladder[:-1], n_ladder[1:])):
        raise ValueError(f"n_ladder must be strictly increasing, got {n_ladder}")
    x0 = check_finite_point(np.zeros(field.dim_state) if x0 is None else x0, "x0")

    n_ref = REFERENCE_FACTOR * n_ladder[-1]
    guard = ExplosionGuard.default()
    scale = np.sqrt(epsilon)

    def _exceed(chunk: range) -> np.ndarray:
        paths = coupled_ladder_paths(field.dim_noise, n_ladder, n_ref, T, seed, chunk)
        reference, _ = euler_batch(field, scale * paths[n_ref], x0, T / n_ref, guard)
        counts = []
        for n in n_ladder:
            states, _ = euler_batch(field, scale * paths[n], x0, T / n, guard)
            gap = sup_gap(reference[:, :: n_ref // n], states)
            counts.append(int(np.sum(gap > delta)))
        return np.array(counts)

    exceed = np.sum(run_trials(_exceed, trials, n_ref + 1, 2 * field.dim_state, threads), axis=0)
    probability = exceed / trials
    stderr = np.sqrt(probability * (1 - probability) / trials)

    result = ClosenessReport(
        epsilon=epsilon,
        delta=delta,
        n_ref=n_ref,
        seed=seed,
        rows=[
            ClosenessRow(n=n, trials=trials, exceed=int(e), probability=float(p), stderr=float(s))
            for n, e, p, s in zip(n_ladder, exceed, probability, stderr)
        ],
        non_increasing=non_increasing_within(probability, stderr),
    )
    if not result.non_increasing:
        logger.warning(f"exceedance {probability.tolist()} is not non-increasing in n")
    report(logger, f"euler closeness of `{field.label}`: {exceed.tolist()} of {trials}")
    return result
