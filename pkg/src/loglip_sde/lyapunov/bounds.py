# -*- coding: utf-8 -*-
"""Closed-form bounds: the exponential sup bound of Ito processes and the sine-series bound."""

import numpy as np
from pydantic import BaseModel

from loglip_sde.coeffs.sine_series import trig_series_sum

# C_1 of V(theta) <= C_1 theta log(1/theta) on (0, 1/e)
SINE_SERIES_CONSTANT = 2 * (np.pi**2 / 2 + 1)


def stroock_bound(A: float, B: float, T: float, R: float, d: int) -> float:
    """``2 d exp(-(R - d**0.5 B T)**2 / (2 A**2 d T))``.

    Bounds ``P(sup_{t<=T} |X_t| >= R)`` for ``X_t = int a dW + int b dt`` with
    ``||a|| <= A`` and ``|b| <= B``. With ``A = 0`` the process cannot reach R and the
    bound is 0.
    """
    if A < 0 or B < 0:
        raise ValueError(f"A and B must be non-negative, got A={A}, B={B}")
    if not T > 0 or not R > 0:
        raise ValueError(f"T and R must be positive, got T={T}, R={R}")
    if int(d) != d or d < 1:
        raise ValueError(f"d must be a positive integer, got {d}")

    drift_reach = np.sqrt(d) * B * T
    if not drift_reach < R:
        raise ValueError(
            f"the bound requires d**0.5 * B * T < R, got {drift_reach} >= {R}"
        )
    if A == 0:
        return 0.0

    return float(2 * d * np.exp(-((R - drift_reach) ** 2) / (2 * A**2 * d * T)))


class SineSeriesBoundReport(BaseModel):
    K: int
    tail_bound: float
    max_ratio: float
    witness_theta: float
    bound_constant: float
    within_bound: bool
    theta: list[float]
    ratio: list[float]


def abs_sine_series(theta, K: int) -> np.ndarray:
    """Partial sum ``V_K(theta) = sum_{k<=K} |sin k theta| / k**2``."""
    return trig_series_sum(lambda z: np.abs(np.sin(z)), theta, K, 2)


def sine_series_bound_check(theta_grid, K: int, tolerance: float | None = None) -> SineSeriesBoundReport:
    """Largest ``V(theta) / (theta log 1/theta)`` over the grid.

    ``V`` is bounded from above by the partial sum plus the tail bound ``1/K``, so the
    reported ratios are upper bounds.
    """
    theta = np.asarray(theta_grid, dtype=float).ravel()
    if theta.size == 0:
        raise ValueError("theta_grid is empty")
    if np.any(theta <= 0) or np.any(theta >= np.exp(-1)):
        raise ValueError("every theta must lie in (0, 1/e)")
    if int(K) != K or K < 1:
        raise ValueError(f"K must be a positive integer, got {K}")
    K = int(K)
    if tolerance is not None and not 1.0 / K < tolerance:
        raise ValueError(f"tail bound 1/K = {1.0 / K} is not below the tolerance {tolerance}")

    upper = abs_sine_series(theta, K) + 1.0 / K
    ratio = upper / (theta * np.log(1.0 / theta))
    witness = int(np.argmax(ratio))

    return SineSeriesBoundReport(
        K=K,
        tail_bound=1.0 / K,
        max_ratio=float(ratio[witness]),
        witness_theta=float(theta[witness]),
        bound_constant=SINE_SERIES_CONSTANT,
        within_bound=bool(ratio[witness] <= SINE_SERIES_CONSTANT),
        theta=theta.tolist(),
        ratio=ratio.tolist(),
    )
