# -*- coding: utf-8 -*-
"""Coefficient fields (b, sigma) consumed by every solver.

A field works on batches: ``drift(x)`` maps an ``(N, d)`` array to ``(N, d)`` and
``diffusion(x)`` maps it to ``(N, d, m)``. Single points go through :func:`eval_field`.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional

import numpy as np

BatchMap = Callable[[np.ndarray], np.ndarray]

_FD_STEP = 1e-7


class ModulusClass(str, Enum):
    LIPSCHITZ = "lipschitz"
    LOG_LIPSCHITZ = "log_lipschitz"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class CoefficientField:
    """Drift b and diffusion sigma of ``dX = sigma(X) dW + b(X) dt``.

    ``drift_jacobian`` (``(N, d, d)``) and ``diffusion_jacobian`` (``(N, d, m, d)``, the
    last axis differentiates) are optional; they are only used by the adjoint of the rate
    functional and fall back to central differences.
    """

    dim_state: int
    dim_noise: int
    drift: BatchMap
    diffusion: BatchMap
    modulus_class: ModulusClass = ModulusClass.CUSTOM
    declared_constant: Optional[float] = None
    bound: Optional[float] = None
    label: str = "custom"
    drift_jacobian: Optional[BatchMap] = None
    diffusion_jacobian: Optional[BatchMap] = None

    def __post_init__(self):
        if self.dim_state < 1 or self.dim_noise < 1:
            raise ValueError(
                f"dimensions must be positive, got d={self.dim_state}, m={self.dim_noise}"
            )
        if self.declared_constant is not None and self.declared_constant < 0:
            raise ValueError(
                f"declared_constant must be non-negative, got {self.declared_constant}"
            )
        object.__setattr__(self, "modulus_class", ModulusClass(self.modulus_class))

    @property
    def is_bounded(self) -> bool:
        """True when every drift component and diffusion entry is known to be bounded."""
        return self.bound is not None

    def with_label(self, label: str) -> "CoefficientField":
        return replace(self, label=label)

    def drift_jac(self, x: np.ndarray) -> np.ndarray:
        if self.drift_jacobian is not None:
            return self.drift_jacobian(x)
        return _central_difference(self.drift, x)

    def diffusion_jac(self, x: np.ndarray) -> np.ndarray:
        if self.diffusion_jacobian is not None:
            return self.diffusion_jacobian(x)
        return _central_difference(self.diffusion, x)


def _central_difference(func: BatchMap, x: np.ndarray) -> np.ndarray:
    """Jacobian of a batch map by central differences, derivative axis last."""
    x = np.asarray(x, dtype=float)
    columns = []
    for i in range(x.shape[1]):
        step = np.zeros(x.shape[1])
        step[i] = _FD_STEP
        columns.append((func(x + step) - func(x - step)) / (2 * _FD_STEP))
    return np.stack(columns, axis=-1)


def check_finite_point(x, name: str = "x") -> np.ndarray:
    """Return ``x`` as a float vector, rejecting non-finite coordinates by index."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    bad = np.flatnonzero(~np.isfinite(x))
    if bad.size:
        i = int(bad[0])
        raise ValueError(f"non-finite input coordinate {name}[{i}] = {x[i]}")
    return x


def eval_field(field: CoefficientField, x) -> tuple[np.ndarray, np.ndarray]:
    """Drift vector and diffusion matrix of ``field`` at the single point ``x``."""
    x = check_finite_point(x)
    if x.shape != (field.dim_state,):
        raise ValueError(
            f"point has shape {x.shape}, field expects ({field.dim_state},)"
        )

    batch = x[None, :]
    return field.drift(batch)[0], field.diffusion(batch)[0]


def constant_field(
    drift_value=0.0, diffusion_value=1.0, dim_state: int = 1, dim_noise: Optional[int] = None
) -> CoefficientField:
    """Field with constant coefficients.

    Scalars broadcast: ``drift_value`` to every component, ``diffusion_value`` to
    ``diffusion_value * I`` (square case) or a filled matrix.
    """
    dim_noise = dim_state if dim_noise is None else dim_noise
    b = np.broadcast_to(np.asarray(drift_value, dtype=float), (dim_state,)).copy()

    s = np.asarray(diffusion_value, dtype=float)
    if s.ndim == 0:
        if dim_noise == dim_state:
            s = s * np.eye(dim_state)
        else:
            s = np.full((dim_state, dim_noise), float(s))
    if s.shape != (dim_state, dim_noise):
        raise ValueError(f"diffusion has shape {s.shape}, expected ({dim_state}, {dim_noise})")

    def drift(x):
        return np.broadcast_to(b, (x.shape[0], dim_state)).copy()

    def diffusion(x):
        return np.broadcast_to(s, (x.shape[0], dim_state, dim_noise)).copy()

    return CoefficientField(
        dim_state=dim_state,
        dim_noise=dim_noise,
        drift=drift,
        diffusion=diffusion,
        modulus_class=ModulusClass.LIPSCHITZ,
        declared_constant=0.0,
        bound=float(max(np.abs(b).max(initial=0.0), np.abs(s).max(initial=0.0))),
        label="constant",
        drift_jacobian=lambda x: np.zeros((x.shape[0], dim_state, dim_state)),
        diffusion_jacobian=lambda x: np.zeros((x.shape[0], dim_state, dim_noise, dim_state)),
    )


def linear_field(
    matrix=1.0, diffusion_value=0.0, dim_state: int = 1, dim_noise: Optional[int] = None
) -> CoefficientField:
    """``b(x) = A x`` with constant diffusion."""
    base = constant_field(0.0, diffusion_value, dim_state, dim_noise)
    a = np.asarray(matrix, dtype=float)
    if a.ndim == 0:
        a = a * np.eye(dim_state)
    if a.shape != (dim_state, dim_state):
        raise ValueError(f"matrix has shape {a.shape}, expected ({dim_state}, {dim_state})")

    return replace(
        base,
        drift=lambda x: x @ a.T,
        drift_jacobian=lambda x: np.broadcast_to(a, (x.shape[0], dim_state, dim_state)).copy(),
        declared_constant=float(np.linalg.norm(a, 2)),
        bound=None,
        label="linear",
    )


def _log_growth_factor(radius: np.ndarray, power: int) -> tuple[np.ndarray, np.ndarray]:
    """``log(max(r, e))**power`` and its derivative in ``r``."""
    clipped = np.maximum(radius, np.e)
    log_r = np.log(clipped)
    value = log_r**power
    slope = np.where(radius > np.e, power * log_r ** (power - 1) / clipped, 0.0)
    return value, slope


def log_growth_field(
    power: int = 1, diffusion_value=0.0, dim_state: int = 1, dim_noise: Optional[int] = None
) -> CoefficientField:
    """``b(x) = x log(max(|x|, e))**power``, the superlinear drifts of the lifetime examples.

    ``power=1`` satisfies the ``|x| log|x|`` growth condition and never explodes;
    ``power=2`` explodes in finite time.
    """
    base = constant_field(0.0, diffusion_value, dim_state, dim_noise)

    def drift(x):
        value, _ = _log_growth_factor(np.linalg.norm(x, axis=1), power)
        return x * value[:, None]

    def drift_jacobian(x):
        radius = np.linalg.norm(x, axis=1)
        value, slope = _log_growth_factor(radius, power)
        safe = np.where(radius > 0, radius, 1.0)
        outer = np.einsum("ni,nj->nij", x, x) * (slope / safe)[:, None, None]
        return value[:, None, None] * np.eye(x.shape[1]) + outer

    return replace(
        base,
        drift=drift,
        drift_jacobian=drift_jacobian,
        modulus_class=ModulusClass.CUSTOM,
        declared_constant=None,
        bound=None,
        label="log_growth" if power == 1 else "log_sq_growth",
    )
