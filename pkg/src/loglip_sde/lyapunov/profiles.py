# -*- coding: utf-8 -*-
"""Growth profiles r(s) of the Osgood and non-explosion conditions.

A profile is stored through ``r_log(v) = r(exp(v))``: near-zero profiles live at
``v = log s -> -inf`` and growth profiles at ``v -> +inf``, and every integral of this
package is carried out in the logarithmic variable.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy.interpolate import interp1d


class ProfileKind(str, Enum):
    LOG_RECIPROCAL = "log_reciprocal"  # log(1/s) on (0, 1)
    LOG_SQUARED = "log_squared"  # log(1/s)**2 on (0, 1)
    LOG = "log"  # log s on (1, inf)
    LOG_SQUARED_GROWTH = "log_squared_growth"  # log(s)**2 on (1, inf)
    CONSTANT = "constant"  # 1 on (0, inf)
    USER_TABULATED = "user_tabulated"


@dataclass(frozen=True, eq=False)
class GrowthProfile:
    kind: ProfileKind
    domain: tuple[float, float]
    r_log: Callable[[np.ndarray], np.ndarray]

    def __call__(self, s):
        """r(s) on the profile domain."""
        s = np.asarray(s, dtype=float)
        lo, hi = self.domain
        if np.any(s <= 0) or np.any(s < lo) or np.any(s > hi):
            raise ValueError(f"s outside the domain {self.domain} of profile `{self.kind.value}`")
        return self.r_log(np.log(s))

    def r_of_logrecip(self, u):
        """r(exp(-u)), the integrand variable of the near-zero integrals."""
        return self.r_log(-np.asarray(u, dtype=float))

    @property
    def near_zero(self) -> bool:
        """True when the profile is defined down to s = 0."""
        return self.domain[0] == 0.0


def _log_reciprocal(v):
    return -v


def _log_squared(v):
    return v**2


def _log(v):
    return np.asarray(v, dtype=float)


def _constant(v):
    return np.ones_like(np.asarray(v, dtype=float))


_BUILTIN = {
    ProfileKind.LOG_RECIPROCAL: ((0.0, 1.0), _log_reciprocal),
    ProfileKind.LOG_SQUARED: ((0.0, 1.0), _log_squared),
    ProfileKind.LOG: ((1.0, np.inf), _log),
    ProfileKind.LOG_SQUARED_GROWTH: ((1.0, np.inf), _log_squared),
    ProfileKind.CONSTANT: ((0.0, np.inf), _constant),
}


def get_profile(kind: str | ProfileKind) -> GrowthProfile:
    """Built-in profile by key."""
    kind = ProfileKind(kind)
    if kind is ProfileKind.USER_TABULATED:
        raise ValueError("tabulated profiles are built with `tabulated_profile`")

    domain, r_log = _BUILTIN[kind]
    return GrowthProfile(kind=kind, domain=domain, r_log=r_log)


def tabulated_profile(s, r) -> GrowthProfile:
    """Profile interpolated linearly in ``log s`` through the table ``(s, r(s))``.

    Outside the table the end values are held constant.
    """
    s = np.asarray(s, dtype=float)
    r = np.asarray(r, dtype=float)
    if s.ndim != 1 or s.shape != r.shape or s.size < 2:
        raise ValueError("the table needs matching one-dimensional s and r with at least 2 rows")
    if np.any(s <= 0) or np.any(np.diff(s) <= 0):
        raise ValueError("tabulated s must be positive and strictly increasing")
    if np.any(r <= 0):
        raise ValueError("tabulated r must be positive")

    interp = interp1d(
        np.log(s), r, kind="linear", bounds_error=False, fill_value=(r[0], r[-1])
    )
    return GrowthProfile(
        kind=ProfileKind.USER_TABULATED,
        domain=(float(s[0]), float(s[-1])),
        r_log=lambda v: interp(v),
    )
