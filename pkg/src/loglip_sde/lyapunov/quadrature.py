# -*- coding: utf-8 -*-
"""Adaptive quadrature shared by the profile integrals."""

import warnings
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate

from loglip_sde.utils.protocol import get_criteria


class QuadratureResult(NamedTuple):
    value: float
    abserr: float
    message: Optional[str] = None  # None when QUADPACK converged


def quad(func, a: float, b: float, tolerance: float | None = None, points=None) -> QuadratureResult:
    """``scipy.integrate.quad`` with the protocol tolerance and panel cap.

    Integration warnings are captured and returned as ``message`` so the caller can
    report them.
    """
    criteria = get_criteria("quadrature")
    tolerance = float(criteria["tolerance"] if tolerance is None else tolerance)
    limit = int(criteria["limit"])

    if a == b:
        return QuadratureResult(0.0, 0.0)

    kwargs = dict(epsabs=tolerance, epsrel=tolerance, limit=limit)
    if points is not None and np.isfinite(a) and np.isfinite(b):
        inner = [p for p in points if min(a, b) < p < max(a, b)]
        if inner:
            kwargs["points"] = inner

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, abserr = integrate.quad(func, a, b, **kwargs)

    messages = [
        str(w.message) for w in caught if issubclass(w.category, integrate.IntegrationWarning)
    ]
    return QuadratureResult(float(value), float(abserr), messages[0] if messages else None)
