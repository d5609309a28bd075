# -*- coding: utf-8 -*-
"""Exit tails ``eps log P(sup_t |X(t) - x0| > R)`` next to the exit-profile exponent ``-psi(R)``."""

from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs.field import CoefficientField, check_finite_point
from loglip_sde.ldp.montecarlo import MIN_TRIALS, estimate_from_counts
from loglip_sde.lyapunov.exit_profile import ExitProfile, exit_profile
from loglip_sde.paths.grid import TimeGrid
from loglip_sde.sde.euler import run_trials, simulate_batch
from loglip_sde.utils.log import get_logger, report

logger = get_logger(__name__)


class ExitTailRow(BaseModel):
    R: float
    trials: int
    hits: int
    p_hat: float
    eps_log_p: Optional[float]
    lo: Optional[float]
    hi: Optional[float]
    neg_psi: float


class ExitTailReport(BaseModel):
    """Per radius; the constant in front of ``exp(-psi(R) / eps)`` is not estimated."""

    epsilon: float
    n: int
    seed: int
    delta0: float
    rows: list[ExitTailRow]

    def csv_rows(self) -> tuple[list[str], list[list]]:
        header = ["R", "trials", "hits", "p_hat", "eps_log_p", "lo", "hi", "neg_psi"]
        return header, [[getattr(row, name) for name in header] for row in self.rows]


def exit_tail_report(
    field: CoefficientField,
    epsilon: float,
    R_ladder: Sequence[float],
    trials: int,
    n: int,
    seed: int,
    profile: Optional[ExitProfile] = None,
    x0=None,
    T: float = 1.0,
    threads: int = 1,
) -> ExitTailReport:
    """One batch of runs counts the exits of every radius of ``R_ladder`` at once."""
    radii = np.asarray(R_ladder, dtype=float)
    if radii.ndim != 1 or radii.size == 0 or np.any(radii <= 0):
        raise ValueError(f"R_ladder must be a non-empty list of positive radii, got {R_ladder}")
    if trials < MIN_TRIALS:
        raise ValueError(f"trials must be at least {MIN_TRIALS}, got {trials}")
    profile = profile or exit_profile()
    x0 = check_finite_point(np.zeros(field.dim_state) if x0 is None else x0, "x0")
    grid = TimeGrid(n, T)

    def _exits(chunk: range) -> np.ndarray:
        states, _ = simulate_batch(field, epsilon, x0, grid, seed, chunk)
        with np.errstate(invalid="ignore"):
            excursion = np.linalg.norm(states - x0, axis=-1).max(axis=1)
        # exploded rows hold inf and exit every ball
        excursion = np.where(np.isnan(excursion), np.inf, excursion)
        return np.array([int(np.sum(excursion > R)) for R in radii])

    hits = np.sum(run_trials(_exits, trials, n + 1, field.dim_state + field.dim_noise, threads), axis=0)

    rows = []
    for R, count in zip(radii, hits):
        estimate = estimate_from_counts(epsilon, int(count), trials)
        rows.append(
            ExitTailRow(
                R=float(R),
                trials=trials,
                hits=estimate.hits,
                p_hat=estimate.p_hat,
                eps_log_p=estimate.eps_log_p,
                lo=estimate.lo,
                hi=estimate.hi,
                neg_psi=0.0 - profile.psi(R),
            )
        )
    report(logger, f"exit tails of `{field.label}` at eps = {epsilon}: {hits.tolist()} of {trials}")
    return ExitTailReport(epsilon=epsilon, n=n, seed=seed, delta0=profile.delta0, rows=rows)
