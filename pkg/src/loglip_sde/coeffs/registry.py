# -*- coding: utf-8 -*-
"""Fields nameable by string key in manifests."""

from typing import Any, Callable

from loglip_sde.coeffs.field import CoefficientField, constant_field, linear_field, log_growth_field
from loglip_sde.coeffs.sine_series import sine_series_field
from loglip_sde.coeffs.truncation import truncate_field

TRUNCATED_PREFIX = "truncated"


def _constant(params: dict) -> CoefficientField:
    return constant_field(
        drift_value=params.get("drift", 0.0),
        diffusion_value=params.get("diffusion", 1.0),
        dim_state=int(params.get("dim", 1)),
        dim_noise=params.get("dim_noise"),
    )


def _linear(params: dict) -> CoefficientField:
    return linear_field(
        matrix=params.get("matrix", 1.0),
        diffusion_value=params.get("diffusion", 0.0),
        dim_state=int(params.get("dim", 1)),
        dim_noise=params.get("dim_noise"),
    )


def _log_growth(power: int) -> Callable[[dict], CoefficientField]:
    def _build(params: dict) -> CoefficientField:
        return log_growth_field(
            power=power,
            diffusion_value=params.get("diffusion", 0.0),
            dim_state=int(params.get("dim", 1)),
            dim_noise=params.get("dim_noise"),
        )

    return _build


def _sine_series(params: dict) -> CoefficientField:
    return sine_series_field(
        K_terms=params.get("K_terms"),
        lifting=params.get("lifting", "diagonal"),
        diffusion_scale=params.get("diffusion_scale", 0.0),
    )


FIELD_BUILDERS: dict[str, Callable[[dict], CoefficientField]] = {
    "sine_series": _sine_series,
    "constant": _constant,
    "linear": _linear,
    "log_growth": _log_growth(1),
    "log_sq_growth": _log_growth(2),
}


def parse_field_key(key: str) -> tuple[str, float | None]:
    """Split ``truncated:<base>:<R>`` into ``(base, R)``; plain keys give ``(key, None)``."""
    if not key.startswith(f"{TRUNCATED_PREFIX}:"):
        if key not in FIELD_BUILDERS:
            raise ValueError(f"unknown field key `{key}`, available: {list_field_keys()}")
        return key, None

    try:
        _, base, radius = key.split(":")
        radius = float(radius)
    except ValueError as exc:
        raise ValueError(
            f"malformed field key `{key}`, expected `{TRUNCATED_PREFIX}:<base>:<R>`"
        ) from exc
    if base not in FIELD_BUILDERS:
        raise ValueError(f"unknown base field `{base}` in `{key}`, available: {list_field_keys()}")
    return base, radius


def list_field_keys() -> list[str]:
    return sorted(FIELD_BUILDERS) + [f"{TRUNCATED_PREFIX}:<base>:<R>"]


def build_field(key: str, params: dict[str, Any] | None = None) -> CoefficientField:
    """Field for a manifest key with its numeric parameters.

    The truncated keys accept ``probe_count`` and ``safety_factor`` next to the parameters
    of the base field.
    """
    params = dict(params or {})
    base, radius = parse_field_key(key)
    field = FIELD_BUILDERS[base](params)
    if radius is None:
        return field

    return truncate_field(
        field,
        radius,
        probe_count=params.get("probe_count"),
        safety_factor=params.get("safety_factor"),
    )
