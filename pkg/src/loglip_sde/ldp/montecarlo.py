# -*- coding: utf-8 -*-
"""Crude Monte Carlo estimates of ``eps log P(X^eps in A)`` with exact binomial bands."""

from typing import Optional

import numpy as np
from pydantic import BaseModel
from scipy.stats import binomtest

from loglip_sde.coeffs.field import CoefficientField, check_finite_point
from loglip_sde.ldp.events import PathEvent
from loglip_sde.paths.grid import TimeGrid
from loglip_sde.sde.euler import run_trials, simulate_batch
from loglip_sde.utils.log import get_logger, report
from loglip_sde.utils.protocol import get_criteria

logger = get_logger(__name__)

MIN_TRIALS = 1000


class McEstimate(BaseModel):
    """``P`` and ``eps log P`` with a Clopper-Pearson band.

    Logarithms of zero are reported as ``None``. With no hits only the upper end of the band
    is informative and ``flag`` reads ``"below resolution"``; a certain event reads
    ``"certain"``.
    """

    epsilon: float
    trials: int
    hits: int
    p_hat: float
    stderr: float
    p_lo: float
    p_hi: float
    eps_log_p: Optional[float]
    lo: Optional[float]
    hi: Optional[float]
    confidence: float
    flag: Optional[str] = None


def _eps_log(epsilon: float, p: float) -> Optional[float]:
    if p <= 0:
        return None
    return float(epsilon * np.log(p))


def binomial_band(hits: int, trials: int, confidence: Optional[float] = None) -> tuple[float, float]:
    """Exact (Clopper-Pearson) band for a binomial proportion."""
    confidence = float(get_criteria("montecarlo")["confidence"] if confidence is None else confidence)
    interval = binomtest(int(hits), int(trials)).proportion_ci(confidence_level=confidence, method="exact")
    return float(interval.low), float(interval.high)


def estimate_from_counts(epsilon: float, hits: int, trials: int, confidence: Optional[float] = None) -> McEstimate:
    confidence = float(get_criteria("montecarlo")["confidence"] if confidence is None else confidence)
    p_hat = hits / trials
    p_lo, p_hi = binomial_band(hits, trials, confidence)

    flag = None
    if hits == 0:
        flag = "below resolution"
    elif hits == trials:
        flag = "certain"

    return McEstimate(
        epsilon=epsilon,
        trials=trials,
        hits=hits,
        p_hat=p_hat,
        stderr=float(np.sqrt(p_hat * (1 - p_hat) / trials)),
        p_lo=p_lo,
        p_hi=p_hi,
        eps_log_p=_eps_log(epsilon, p_hat),
        lo=_eps_log(epsilon, p_lo),
        hi=_eps_log(epsilon, p_hi),
        confidence=confidence,
        flag=flag,
    )


def mc_log_prob(
    field: CoefficientField,
    epsilon: float,
    event: PathEvent,
    trials: int,
    n: int,
    seed: int,
    x0=None,
    T: float = 1.0,
    threads: int = 1,
) -> McEstimate:
    """Fraction of seeded Euler-Maruyama runs whose nodes lie in ``event``."""
    if trials < MIN_TRIALS:
        raise ValueError(f"trials must be at least {MIN_TRIALS}, got {trials}")
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    x0 = check_finite_point(np.zeros(field.dim_state) if x0 is None else x0, "x0")
    grid = TimeGrid(n, T)
    times = grid.nodes

    def _hits(chunk: range) -> tuple[int, int]:
        states, exit_index = simulate_batch(field, epsilon, x0, grid, seed, chunk)
        return int(np.sum(event.occurred(states, times))), int(np.sum(exit_index >= 0))

    counts = run_trials(_hits, trials, n + 1, field.dim_state + field.dim_noise, threads)
    hits = sum(c[0] for c in counts)
    exploded = sum(c[1] for c in counts)
    if exploded:
        logger.warning(f"{exploded} of {trials} runs exploded at eps = {epsilon}")

    estimate = estimate_from_counts(epsilon, hits, trials)
    if estimate.flag:
        logger.warning(f"event `{event.kind.value}` at eps = {epsilon}: {estimate.flag}")
    report(logger, f"eps = {epsilon}: {hits}/{trials} hits, eps log P = {estimate.eps_log_p!r}")
    return estimate
