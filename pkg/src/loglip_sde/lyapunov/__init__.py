# -*- coding: utf-8 -*-
"""Growth profiles, Osgood integrals, the exit profile and closed-form bounds."""

from .bounds import SINE_SERIES_CONSTANT, SineSeriesBoundReport, sine_series_bound_check, stroock_bound
from .exit_profile import ExitProfile, exit_profile, exit_profile_psi
from .osgood import (
    GrowthDiagnostic,
    OsgoodDiagnostic,
    OsgoodEvaluator,
    RegularityDiagnostic,
    growth_diverges,
    growth_psi,
    log_phi_rho_lambda,
    osgood_diverges,
    phi_rho_lambda,
    profile_regularity,
    psi_rho,
)
from .profiles import GrowthProfile, ProfileKind, get_profile, tabulated_profile

__all__ = [
    "ExitProfile",
    "GrowthDiagnostic",
    "GrowthProfile",
    "OsgoodDiagnostic",
    "OsgoodEvaluator",
    "ProfileKind",
    "RegularityDiagnostic",
    "SINE_SERIES_CONSTANT",
    "SineSeriesBoundReport",
    "exit_profile",
    "exit_profile_psi",
    "get_profile",
    "growth_diverges",
    "growth_psi",
    "log_phi_rho_lambda",
    "osgood_diverges",
    "phi_rho_lambda",
    "profile_regularity",
    "psi_rho",
    "sine_series_bound_check",
    "stroock_bound",
    "tabulated_profile",
]
