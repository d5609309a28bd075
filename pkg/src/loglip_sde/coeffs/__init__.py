# -*- coding: utf-8 -*-
"""Coefficient fields, the sine-series example, truncation and modulus estimation."""

from .field import (
    CoefficientField,
    ModulusClass,
    constant_field,
    eval_field,
    linear_field,
    log_growth_field,
)
from .modulus import estimate_growth, estimate_modulus
from .registry import build_field, list_field_keys
from .sine_series import (
    SineSeriesField,
    sine_series_field,
    sine_series_limit,
    sine_series_partial_sum,
)
from .truncation import TruncatedField, TruncationSpec, truncate_field

__all__ = [
    "CoefficientField",
    "ModulusClass",
    "SineSeriesField",
    "TruncatedField",
    "TruncationSpec",
    "build_field",
    "constant_field",
    "estimate_growth",
    "estimate_modulus",
    "eval_field",
    "linear_field",
    "list_field_keys",
    "log_growth_field",
    "sine_series_field",
    "sine_series_limit",
    "sine_series_partial_sum",
    "truncate_field",
]
