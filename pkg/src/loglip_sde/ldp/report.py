# -*- coding: utf-8 -*-
"""Freidlin-Wentzell gap reports: Monte Carlo ``eps log P`` against ``-I`` down an eps ladder."""

from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs.field import CoefficientField
from loglip_sde.exceptions import NumericalFailure
from loglip_sde.ldp.events import PathEvent
from loglip_sde.ldp.montecarlo import mc_log_prob
from loglip_sde.ldp.rate import rate_functional
from loglip_sde.utils.log import get_logger, report

logger = get_logger(__name__)


class LdpRow(BaseModel):
    eps: float
    trials: int
    hits: int
    p_hat: float
    eps_log_p: Optional[float]
    lo: Optional[float]
    hi: Optional[float]
    neg_I: float
    gap: Optional[float]
    flag: Optional[str] = None


class LdpReport(BaseModel):
    """One row per eps; ``gap = eps log P - (-I)``.

    ``gap_decreasing`` is a trend check on ``|gap|`` down the ladder, not a limit claim.
    """

    event: dict
    rate: float
    knots: int
    n: int
    seed: int
    confidence: float
    rows: list[LdpRow]
    gap_decreasing: bool

    def csv_rows(self) -> tuple[list[str], list[list]]:
        header = ["eps", "trials", "hits", "p_hat", "eps_log_p", "lo", "hi", "neg_I", "gap"]
        return header, [[getattr(row, name) for name in header] for row in self.rows]


def _gap_decreasing(gaps: list[Optional[float]]) -> bool:
    if any(g is None for g in gaps):
        return False
    magnitudes = np.abs(np.asarray(gaps, dtype=float))
    return bool(np.all(np.diff(magnitudes) <= 0))


def ldp_gap_report(
    field: CoefficientField,
    event: PathEvent,
    eps_ladder: Sequence[float],
    trials: int,
    knots: int,
    seed: int,
    n: int = 2048,
    restarts: int = 1,
    x0=None,
    T: float = 1.0,
    radius: Optional[float] = None,
    threads: int = 1,
) -> LdpReport:
    """Join :func:`mc_log_prob` over ``eps_ladder`` with ``-I`` from :func:`rate_functional`."""
    eps_ladder = [float(eps) for eps in eps_ladder]
    if not eps_ladder:
        raise ValueError("eps_ladder must not be empty")

    rate = rate_functional(field, event, knots, restarts, seed, x0=x0, T=T, radius=radius, threads=threads)
    if not rate.feasible:
        raise NumericalFailure(
            f"rate functional infeasible at {knots} knots",
            {"residual": rate.residual, "tolerance": rate.tolerance, "knots": knots},
        )
    neg_rate = 0.0 - rate.rate

    rows = []
    confidence = None
    for eps in eps_ladder:
        estimate = mc_log_prob(field, eps, event, trials, n, seed, x0=x0, T=T, threads=threads)
        confidence = estimate.confidence
        gap = None if estimate.eps_log_p is None else estimate.eps_log_p - neg_rate
        rows.append(
            LdpRow(
                eps=eps,
                trials=estimate.trials,
                hits=estimate.hits,
                p_hat=estimate.p_hat,
                eps_log_p=estimate.eps_log_p,
                lo=estimate.lo,
                hi=estimate.hi,
                neg_I=neg_rate,
                gap=gap,
                flag=estimate.flag,
            )
        )

    result = LdpReport(
        event=event.to_dict(),
        rate=rate.rate,
        knots=knots,
        n=n,
        seed=seed,
        confidence=confidence,
        rows=rows,
        gap_decreasing=_gap_decreasing([row.gap for row in rows]),
    )
    if not result.gap_decreasing:
        logger.warning(f"gaps {[row.gap for row in rows]} do not decrease in magnitude down the ladder")
    report(logger, f"ldp gaps for `{event.kind.value}`: {[row.gap for row in rows]}")
    return result
