# -*- coding: utf-8 -*-
"""Truncation of a field to bounded coefficients outside a ball."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import norm, qmc

from loglip_sde.coeffs.field import CoefficientField
from loglip_sde.utils.log import get_logger
from loglip_sde.utils.protocol import get_criteria

logger = get_logger(__name__)


@dataclass(frozen=True)
class TruncationSpec:
    R: float
    m_R: float
    probed_sup: float
    safety_factor: float
    probe_count: int

    @property
    def clip(self) -> float:
        """Every truncated component lies in ``[-clip, clip]``."""
        return self.m_R + 1.0


@dataclass(frozen=True, eq=False)
class TruncatedField(CoefficientField):
    base: Optional[CoefficientField] = None
    truncation: Optional[TruncationSpec] = None


def ball_probes(dim: int, R: float, probe_count: int, seed: int = 0) -> np.ndarray:
    """Scrambled Sobol points in the closed ball of radius R, plus the origin and +-R e_i.

    The first ``dim`` Sobol coordinates give a direction through the Gaussian quantile
    function, the last one the radius ``R u**(1/dim)``.
    """
    m = max(int(np.ceil(np.log2(probe_count))), 0)
    u = qmc.Sobol(d=dim + 1, scramble=True, seed=seed).random_base2(m)[:probe_count]
    u = np.clip(u, 1e-12, 1 - 1e-12)

    directions = norm.ppf(u[:, :dim])
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    sobol_points = directions * (R * u[:, dim : dim + 1] ** (1.0 / dim))

    axes = R * np.eye(dim)
    return np.concatenate([np.zeros((1, dim)), axes, -axes, sobol_points])


def coefficient_sup(field: CoefficientField, points: np.ndarray) -> float:
    """max over points of |b(x)| and the Frobenius norm of sigma(x)."""
    drift_norm = np.linalg.norm(field.drift(points), axis=1)
    diffusion_norm = np.linalg.norm(field.diffusion(points), axis=(1, 2))
    return float(max(drift_norm.max(), diffusion_norm.max()))


def truncate_field(
    field: CoefficientField,
    R: float,
    probe_count: Optional[int] = None,
    safety_factor: Optional[float] = None,
    seed: int = 0,
) -> TruncatedField:
    """Clip every drift component and diffusion entry of ``field`` to ``[-m_R-1, m_R+1]``.

    ``m_R`` is the probed sup of the coefficients over the ball ``|x| <= R`` times
    ``safety_factor``. Clipping is the identity wherever the coefficients stay within the
    bound, so the truncated field agrees bit for bit with ``field`` on the probes.
    """
    if not R > 0:
        raise ValueError(f"truncation radius R must be positive, got {R}")

    criteria = get_criteria("truncation")
    probe_count = int(criteria["probe_count"] if probe_count is None else probe_count)
    safety_factor = float(
        criteria["safety_factor"] if safety_factor is None else safety_factor
    )
    if probe_count < 1:
        raise ValueError(f"probe_count must be positive, got {probe_count}")
    if safety_factor < 1:
        raise ValueError(f"safety_factor must be at least 1, got {safety_factor}")

    probes = ball_probes(field.dim_state, R, probe_count, seed)
    probed_sup = coefficient_sup(field, probes)
    spec = TruncationSpec(
        R=float(R),
        m_R=probed_sup * safety_factor,
        probed_sup=probed_sup,
        safety_factor=safety_factor,
        probe_count=probe_count,
    )
    logger.info(
        f"truncated `{field.label}` at R={spec.R}: probed sup {probed_sup}, m_R={spec.m_R}"
    )
    lo, hi = -spec.clip, spec.clip

    def drift(x):
        return np.clip(field.drift(x), lo, hi)

    def diffusion(x):
        return np.clip(field.diffusion(x), lo, hi)

    def drift_jacobian(x):
        inside = np.abs(field.drift(x)) <= hi
        return field.drift_jac(x) * inside[..., None]

    def diffusion_jacobian(x):
        inside = np.abs(field.diffusion(x)) <= hi
        return field.diffusion_jac(x) * inside[..., None]

    return TruncatedField(
        dim_state=field.dim_state,
        dim_noise=field.dim_noise,
        drift=drift,
        diffusion=diffusion,
        modulus_class=field.modulus_class,
        declared_constant=field.declared_constant,
        bound=spec.clip if field.bound is None else min(spec.clip, field.bound),
        label=f"truncated:{field.label}:{spec.R:g}",
        drift_jacobian=drift_jacobian,
        diffusion_jacobian=diffusion_jacobian,
        base=field,
        truncation=spec,
    )
