# -*- coding: utf-8 -*-
"""Euler-Maruyama runs, coupled experiments and lifetime detection."""

from .coupling import (
    ExpectationGapReport,
    RefinementReport,
    StabilityReport,
    coupled_pair,
    expectation_gap,
    refinement_gaps,
    stability_probability,
)
from .euler import SdeRun, coupled_ladder_paths, euler_maruyama, run_trials, simulate_batch
from .lifetime import LifetimeReport, detect_lifetime

__all__ = [
    "ExpectationGapReport",
    "LifetimeReport",
    "RefinementReport",
    "SdeRun",
    "StabilityReport",
    "coupled_ladder_paths",
    "coupled_pair",
    "detect_lifetime",
    "euler_maruyama",
    "expectation_gap",
    "refinement_gaps",
    "run_trials",
    "simulate_batch",
    "stability_probability",
]
