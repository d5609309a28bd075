# -*- coding: utf-8 -*-
"""Skeleton ODE, Euler polygon and the deterministic convergence experiments."""

from .convergence import UniformConvergenceReport, uniform_convergence_report
from .flow import FlowContinuityReport, NonconfluenceReport, flow_continuity, ode_flow, ode_nonconfluence
from .solvers import ExplosionGuard, SkeletonProblem, euler_batch, euler_polygon, solve_skeleton

__all__ = [
    "ExplosionGuard",
    "FlowContinuityReport",
    "NonconfluenceReport",
    "SkeletonProblem",
    "UniformConvergenceReport",
    "euler_batch",
    "euler_polygon",
    "flow_continuity",
    "ode_flow",
    "ode_nonconfluence",
    "solve_skeleton",
    "uniform_convergence_report",
]
