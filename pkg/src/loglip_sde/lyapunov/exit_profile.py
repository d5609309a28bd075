# -*- coding: utf-8 -*-
"""The C^1 profile f of the exit-probability estimate and its integral psi.

``f(s) = -s log s`` on ``[0, 1-delta0]``, ``s log s`` on ``[1+delta0, inf)`` and a cubic
Hermite interpolant in between that matches values and slopes at both junctions.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from loglip_sde.lyapunov.quadrature import quad
from loglip_sde.utils.log import get_logger
from loglip_sde.utils.protocol import get_criteria

logger = get_logger(__name__)


def _xlogx(s: np.ndarray) -> np.ndarray:
    safe = np.where(s > 0, s, 1.0)
    return np.where(s > 0, s * np.log(safe), 0.0)


@dataclass(frozen=True, eq=False)
class ExitProfile:
    delta0: float
    spline: CubicHermiteSpline
    tolerance: Optional[float] = None

    @property
    def junctions(self) -> tuple[float, float]:
        return 1.0 - self.delta0, 1.0 + self.delta0

    def f(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        if np.any(s < 0):
            raise ValueError("the exit profile is defined for s >= 0")
        lo, hi = self.junctions
        xlogx = _xlogx(s)
        return np.where(s <= lo, -xlogx, np.where(s >= hi, xlogx, self.spline(np.clip(s, lo, hi))))

    def psi(self, R: float) -> float:
        return exit_profile_psi(self, R)


def exit_profile(delta0: float | None = None, tolerance: float | None = None) -> ExitProfile:
    """Build the profile for ``delta0`` in (0, 1/2)."""
    delta0 = float(get_criteria("exit_profile")["delta0"] if delta0 is None else delta0)
    if not 0 < delta0 < 0.5:
        raise ValueError(f"delta0 must lie in (0, 1/2), got {delta0}")

    lo, hi = 1.0 - delta0, 1.0 + delta0
    spline = CubicHermiteSpline(
        [lo, hi],
        [-lo * np.log(lo), hi * np.log(hi)],
        [-np.log(lo) - 1.0, np.log(hi) + 1.0],
    )
    return ExitProfile(delta0=delta0, spline=spline, tolerance=tolerance)


def exit_profile_psi(p: ExitProfile, R: float) -> float:
    """``int_0^R ds / (f(s) + 1)``.

    The part beyond ``1 + delta0`` is integrated in ``v = log s``, where the integrand is
    ``1 / (v + exp(-v))``.
    """
    R = float(R)
    if not np.isfinite(R) or R < 0:
        raise ValueError(f"R must be finite and non-negative, got {R}")

    lo, hi = p.junctions
    inner = quad(lambda s: 1.0 / (float(p.f(s)) + 1.0), 0.0, min(R, hi), p.tolerance, points=[lo])
    total, message = inner.value, inner.message
    if R > hi:
        outer = quad(lambda v: 1.0 / (v + np.exp(-v)), np.log(hi), np.log(R), p.tolerance)
        total += outer.value
        message = message or outer.message

    if message:
        logger.warning(f"quadrature of the exit profile psi({R}) did not converge: {message}")
    return total
