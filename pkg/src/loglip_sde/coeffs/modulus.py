# -*- coding: utf-8 -*-
"""Empirical modulus and growth constants of a field.

Both estimators are plain maxima over seeded samples. Samples are taken row by row from
one stream, so a larger ``pair_count`` with the same seed extends the smaller sample and
the estimates never decrease.
"""

import numpy as np
from scipy.stats import norm

from loglip_sde.coeffs.field import CoefficientField
from loglip_sde.utils.log import get_logger
from loglip_sde.utils.protocol import get_criteria
from loglip_sde.utils.rng import generator

logger = get_logger(__name__)

_EVAL_CHUNK = 4096


def _unit_directions(u: np.ndarray) -> np.ndarray:
    gaussian = norm.ppf(np.clip(u, 1e-16, 1 - 1e-16))
    length = np.linalg.norm(gaussian, axis=1, keepdims=True)
    return gaussian / np.where(length > 0, length, 1.0)


def modulus_pairs(dim: int, pair_count: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Seeded pairs (x, y) with 0 < |x - y| <= 1/e.

    Centers are uniform in ``[-c, c]**d``, directions uniform on the sphere and distances
    log-uniform on ``[min_distance, max_distance]`` (protocol ``modulus`` criteria).
    """
    criteria = get_criteria("modulus")
    box = float(criteria["center_box"])
    log_lo = np.log(float(criteria["min_distance"]))
    log_hi = np.log(float(criteria["max_distance"]))

    u = generator(seed, tag="modulus").random((pair_count, 2 * dim + 1))
    x = -box + 2 * box * u[:, :dim]
    distance = np.exp(log_lo + (log_hi - log_lo) * u[:, 2 * dim])
    y = x + _unit_directions(u[:, dim : 2 * dim]) * distance[:, None]
    return x, y


def estimate_modulus(field: CoefficientField, pair_count: int, seed: int) -> tuple[float, float]:
    """Largest observed log-Lipschitz ratios ``(C_sigma, C_drift)``.

    ``C_sigma = max ||s(x)-s(y)||**2 / (|x-y|**2 log 1/|x-y|)`` and
    ``C_drift = max |b(x)-b(y)| / (|x-y| log 1/|x-y|)`` over pairs with ``0 < |x-y| < 1``.
    Pairs whose computed distance is zero are skipped.
    """
    if pair_count < 1:
        raise ValueError(f"pair_count must be positive, got {pair_count}")

    x, y = modulus_pairs(field.dim_state, pair_count, seed)
    c_sigma, c_drift = 0.0, 0.0
    for start in range(0, pair_count, _EVAL_CHUNK):
        xs, ys = x[start : start + _EVAL_CHUNK], y[start : start + _EVAL_CHUNK]
        distance = np.linalg.norm(xs - ys, axis=1)
        keep = (distance > 0) & (distance < 1)
        if not keep.any():
            continue
        xs, ys, distance = xs[keep], ys[keep], distance[keep]
        log_recip = np.log(1.0 / distance)

        drift_gap = np.linalg.norm(field.drift(xs) - field.drift(ys), axis=1)
        diffusion_gap = np.linalg.norm(field.diffusion(xs) - field.diffusion(ys), axis=(1, 2))

        c_drift = max(c_drift, float(np.max(drift_gap / (distance * log_recip))))
        c_sigma = max(
            c_sigma, float(np.max(diffusion_gap**2 / (distance**2 * log_recip)))
        )

    logger.info(f"modulus of `{field.label}` over {pair_count} pairs: sigma {c_sigma}, drift {c_drift}")
    return c_sigma, c_drift


def estimate_growth(
    field: CoefficientField, probe_count: int, seed: int, radius_max: float = 1.0e6
) -> tuple[float, float]:
    """Largest observed growth ratios ``(C_sigma, C_drift)`` for ``|x| >= 1``.

    ``C_sigma = max ||s(x)||**2 / (|x|**2 log|x| + 1)`` and
    ``C_drift = max |b(x)| / (|x| log|x| + 1)``; radii are log-uniform on
    ``[1, radius_max]``.
    """
    if probe_count < 1:
        raise ValueError(f"probe_count must be positive, got {probe_count}")
    if not radius_max > 1:
        raise ValueError(f"radius_max must exceed 1, got {radius_max}")

    dim = field.dim_state
    u = generator(seed, tag="growth").random((probe_count, dim + 1))
    radius = np.exp(np.log(radius_max) * u[:, dim])
    points = _unit_directions(u[:, :dim]) * radius[:, None]

    c_sigma, c_drift = 0.0, 0.0
    for start in range(0, probe_count, _EVAL_CHUNK):
        xs, r = points[start : start + _EVAL_CHUNK], radius[start : start + _EVAL_CHUNK]
        drift_norm = np.linalg.norm(field.drift(xs), axis=1)
        diffusion_norm = np.linalg.norm(field.diffusion(xs), axis=(1, 2))
        c_drift = max(c_drift, float(np.max(drift_norm / (r * np.log(r) + 1))))
        c_sigma = max(c_sigma, float(np.max(diffusion_norm**2 / (r**2 * np.log(r) + 1))))

    return c_sigma, c_drift
