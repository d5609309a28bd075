# -*- coding: utf-8 -*-
"""The log-Lipschitz example field built from f(x1, x2) = sum_k sin(k x1) sin(k x2) / k**2."""

from dataclasses import dataclass

import numpy as np

from loglip_sde.coeffs.field import CoefficientField, ModulusClass
from loglip_sde.utils.protocol import get_criteria

# frequencies and points evaluated at once, bounds the work array
_K_CHUNK = 4096
_ROW_CHUNK = 1024

LIFTINGS = ("diagonal", "first")


def trig_series_sum(trig, theta: np.ndarray, K_terms: int, power: int) -> np.ndarray:
    """sum_{k<=K} trig(k theta) / k**power for every entry of ``theta``."""
    theta = np.asarray(theta, dtype=float)
    flat = theta.reshape(-1)
    total = np.zeros(flat.shape[0])
    for row in range(0, flat.shape[0], _ROW_CHUNK):
        block = flat[row : row + _ROW_CHUNK, None]
        for start in range(1, K_terms + 1, _K_CHUNK):
            k = np.arange(start, min(start + _K_CHUNK, K_terms + 1), dtype=float)
            total[row : row + _ROW_CHUNK] += np.sum(trig(block * k) / k**power, axis=1)
    return total.reshape(theta.shape)


def _cosine_sum(theta: np.ndarray, K_terms: int) -> np.ndarray:
    return trig_series_sum(np.cos, theta, K_terms, 2)


def _sine_sum(theta: np.ndarray, K_terms: int) -> np.ndarray:
    return trig_series_sum(np.sin, theta, K_terms, 1)


def sine_series_partial_sum(x1, x2, K_terms: int) -> np.ndarray:
    """K-term partial sum of f, through sin a sin b = (cos(a-b) - cos(a+b)) / 2."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    return 0.5 * (_cosine_sum(x1 - x2, K_terms) - _cosine_sum(x1 + x2, K_terms))


def _bernoulli_cosine(theta: np.ndarray) -> np.ndarray:
    """sum_k cos(k theta) / k**2 in closed form (periodic quadratic)."""
    theta = np.mod(np.asarray(theta, dtype=float), 2 * np.pi)
    return np.pi**2 / 6 - np.pi * theta / 2 + theta**2 / 4


def sine_series_limit(x1, x2) -> np.ndarray:
    """The infinite series f in closed form."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    return 0.5 * (_bernoulli_cosine(x1 - x2) - _bernoulli_cosine(x1 + x2))


def sine_series_tail_bound(K_terms: int) -> float:
    """Upper bound 1/K of the omitted tail sum_{k>K} 1/k**2."""
    return 1.0 / K_terms


@dataclass(frozen=True, eq=False)
class SineSeriesField(CoefficientField):
    """Two-dimensional field whose drift copies f into the coordinates picked by ``lifting``.

    ``diagonal`` gives b = (f, f), ``first`` gives b = (f, 0). Diffusion is
    ``diffusion_scale * I``.
    """

    K_terms: int = 100000
    lifting: str = "diagonal"
    diffusion_scale: float = 0.0

    def f(self, x1, x2) -> np.ndarray:
        return sine_series_partial_sum(x1, x2, self.K_terms)

    @property
    def tail_bound(self) -> float:
        return sine_series_tail_bound(self.K_terms)


def _lifting_mask(lifting: str) -> np.ndarray:
    if lifting == "diagonal":
        return np.array([1.0, 1.0])
    if lifting == "first":
        return np.array([1.0, 0.0])
    raise ValueError(f"unknown lifting `{lifting}`, expected one of {LIFTINGS}")


def sine_series_field(
    K_terms: int | None = None, lifting: str = "diagonal", diffusion_scale: float = 0.0
) -> SineSeriesField:
    """The example field with f truncated after ``K_terms`` terms."""
    if K_terms is None:
        K_terms = int(get_criteria("sine_series")["K_terms"])
    if int(K_terms) != K_terms or K_terms < 1:
        raise ValueError(f"K_terms must be a positive integer, got {K_terms}")
    K_terms = int(K_terms)
    mask = _lifting_mask(lifting)
    scale = float(diffusion_scale)

    def drift(x):
        return sine_series_partial_sum(x[:, 0], x[:, 1], K_terms)[:, None] * mask

    def drift_jacobian(x):
        # d/dx1 and d/dx2 of (cos(x1-x2) - cos(x1+x2)) / 2 summed with weight 1/k**2
        minus = _sine_sum(x[:, 0] - x[:, 1], K_terms)
        plus = _sine_sum(x[:, 0] + x[:, 1], K_terms)
        grad = np.stack([0.5 * (plus - minus), 0.5 * (plus + minus)], axis=-1)
        return mask[None, :, None] * grad[:, None, :]

    def diffusion(x):
        return np.broadcast_to(scale * np.eye(2), (x.shape[0], 2, 2)).copy()

    return SineSeriesField(
        dim_state=2,
        dim_noise=2,
        drift=drift,
        diffusion=diffusion,
        modulus_class=ModulusClass.LOG_LIPSCHITZ,
        bound=max(np.pi**2 / 6, abs(scale)),
        label="sine_series",
        drift_jacobian=drift_jacobian,
        diffusion_jacobian=lambda x: np.zeros((x.shape[0], 2, 2, 2)),
        K_terms=K_terms,
        lifting=lifting,
        diffusion_scale=scale,
    )
