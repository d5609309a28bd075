# -*- coding: utf-8 -*-
"""Large deviations: path events, the rate functional and Monte Carlo gap reports."""

from .closeness import ClosenessReport, euler_closeness
from .events import EventKind, PathEvent
from .exit_tail import ExitTailReport, exit_tail_report
from .montecarlo import McEstimate, binomial_band, estimate_from_counts, mc_log_prob
from .rate import RateResult, rate_functional
from .report import LdpReport, ldp_gap_report

__all__ = [
    "ClosenessReport",
    "EventKind",
    "ExitTailReport",
    "LdpReport",
    "McEstimate",
    "PathEvent",
    "RateResult",
    "binomial_band",
    "estimate_from_counts",
    "euler_closeness",
    "exit_tail_report",
    "ldp_gap_report",
    "mc_log_prob",
    "rate_functional",
]
