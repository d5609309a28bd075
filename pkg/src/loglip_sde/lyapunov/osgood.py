# -*- coding: utf-8 -*-
"""Osgood integrals psi_rho, their exponentials Phi_{rho,lambda} and divergence tests.

For a profile defined near 0, ``psi_rho(xi) = int_0^xi ds / (s r(s) + rho)``; with
``s = exp(-u)`` this is ``int_{log 1/xi}^inf du / (r + rho e^u)``, which is what the
quadrature evaluates.
"""

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel

from loglip_sde.exceptions import DivergentIntegralError, ExponentOverflowError
from loglip_sde.lyapunov.profiles import GrowthProfile
from loglip_sde.lyapunov.quadrature import quad
from loglip_sde.utils.log import get_logger
from loglip_sde.utils.protocol import get_criteria

logger = get_logger(__name__)

# largest exponent with a finite double exp()
LOG_MAX_DOUBLE = float(np.log(np.finfo(float).max))

Verdict = Literal["diverges", "converges", "inconclusive"]


class OsgoodRung(BaseModel):
    delta: float
    integral: float


class OsgoodDiagnostic(BaseModel):
    verdict: Verdict
    rungs: list[OsgoodRung]
    tolerance: float
    message: Optional[str] = None


class GrowthRung(BaseModel):
    R: float
    integral: float


class GrowthDiagnostic(BaseModel):
    verdict: Verdict
    rungs: list[GrowthRung]
    tolerance: float
    message: Optional[str] = None


class RegularityRung(BaseModel):
    s: float
    value: float


class RegularityDiagnostic(BaseModel):
    verdict: Literal["holds", "fails", "inconclusive"]
    rungs: list[RegularityRung]


@dataclass(frozen=True, eq=False)
class OsgoodEvaluator:
    """psi_rho and Phi_{rho,lambda} of a near-zero profile.

    With ``rho = 0`` the lower limit is ``cutoff`` when it is positive, otherwise 0, in
    which case the integral must pass :func:`osgood_diverges` as convergent.
    """

    profile: GrowthProfile
    rho: float = 0.0
    lam: float = 1.0
    tolerance: Optional[float] = None
    cutoff: float = 0.0

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError(f"rho must be non-negative, got {self.rho}")
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.cutoff < 0:
            raise ValueError(f"cutoff must be non-negative, got {self.cutoff}")
        if not self.profile.near_zero:
            raise ValueError(
                f"profile `{self.profile.kind.value}` is not defined near 0, use growth_psi"
            )
        if self.tolerance is None:
            object.__setattr__(
                self, "tolerance", float(get_criteria("quadrature")["tolerance"])
            )

    def psi(self, xi: float) -> float:
        return psi_rho(self, xi)

    def phi(self, xi: float) -> float:
        return phi_rho_lambda(self, xi)

    def log_phi(self, xi: float) -> float:
        return log_phi_rho_lambda(self, xi)


def _check_xi(ev: OsgoodEvaluator, xi: float) -> float:
    xi = float(xi)
    if not np.isfinite(xi) or xi < 0:
        raise ValueError(f"xi must be finite and non-negative, got {xi}")
    if xi > ev.profile.domain[1]:
        raise ValueError(f"xi = {xi} beyond the profile domain {ev.profile.domain}")
    return xi


def psi_rho(ev: OsgoodEvaluator, xi: float) -> float:
    """``int_0^xi ds / (s r(s) + rho)`` to the evaluator tolerance.

    Raises :class:`DivergentIntegralError` for ``rho = 0`` without cutoff when the
    integral is not found convergent.
    """
    xi = _check_xi(ev, xi)
    if xi == 0.0 or (ev.rho == 0 and ev.cutoff >= xi):
        return 0.0

    r_u = ev.profile.r_of_logrecip
    u0 = np.log(1.0 / xi)

    if ev.rho > 0:
        rho = ev.rho

        def integrand(u):
            decay = np.exp(-u)
            return decay / (r_u(u) * decay + rho)

        # beyond u1 the integrand is below exp(-u) / rho
        u_turn = np.log(1.0 / rho)
        u1 = max(u0, u_turn) + np.log(1.0 / ev.tolerance) + 5.0
        body = quad(integrand, u0, u1, ev.tolerance, points=[u_turn])
        tail = quad(integrand, u1, np.inf, ev.tolerance)
        _warn_quadrature(body.message or tail.message, "psi_rho")
        return body.value + tail.value

    if ev.cutoff > 0:
        body = quad(lambda u: 1.0 / r_u(u), u0, np.log(1.0 / ev.cutoff), ev.tolerance)
        _warn_quadrature(body.message, "psi_rho")
        return body.value

    diagnostic = osgood_diverges(ev.profile, a=xi, tolerance=ev.tolerance)
    if diagnostic.verdict != "converges":
        raise DivergentIntegralError(
            f"psi_0({xi}) of profile `{ev.profile.kind.value}` is {diagnostic.verdict} "
            "at the lower limit 0; set rho > 0 or a positive cutoff"
        )
    body = quad(lambda u: 1.0 / r_u(u), u0, np.inf, ev.tolerance)
    _warn_quadrature(body.message, "psi_rho")
    return body.value


def log_phi_rho_lambda(ev: OsgoodEvaluator, xi: float) -> float:
    """``lambda * psi_rho(xi)``, the logarithm of Phi_{rho,lambda}."""
    return ev.lam * psi_rho(ev, xi)


def phi_rho_lambda(ev: OsgoodEvaluator, xi: float) -> float:
    """``exp(lambda psi_rho(xi))``; raises :class:`ExponentOverflowError` past the double range."""
    exponent = log_phi_rho_lambda(ev, xi)
    if exponent > LOG_MAX_DOUBLE:
        raise ExponentOverflowError(exponent)
    return float(np.exp(exponent))


def _warn_quadrature(message: str | None, what: str):
    if message:
        logger.warning(f"quadrature of {what} did not converge: {message}")


def _ladder_verdict(integrals: np.ndarray) -> Verdict:
    """Divergence signature of partial integrals along a ladder.

    ``diverges`` when each of the last increments is at least a fixed fraction of the
    first one, ``converges`` when the last increment ratios are all below the configured
    ratio.
    """
    criteria = get_criteria("osgood")
    tail = int(criteria["tail_rungs"])
    increments = np.diff(integrals)

    first = increments[0]
    if first > 0 and np.all(increments[-tail:] >= criteria["diverges_fraction"] * first):
        return "diverges"

    ratios = increments[1:] / np.where(increments[:-1] != 0, increments[:-1], np.nan)
    last = ratios[-tail:]
    if np.all(np.isfinite(last)) and np.all((last >= 0) & (last <= criteria["converges_ratio"])):
        return "converges"

    return "inconclusive"


def _default_exponents() -> np.ndarray:
    criteria = get_criteria("osgood")
    return float(criteria["ladder_exponent_base"]) ** np.arange(int(criteria["ladder_rungs"]))


def _check_ladder(ladder: np.ndarray, increasing: bool):
    criteria = get_criteria("osgood")
    minimum = int(criteria["tail_rungs"]) + 3
    if ladder.ndim != 1 or ladder.size < minimum:
        raise ValueError(f"the ladder needs at least {minimum} rungs, got {ladder.size}")
    steps = np.diff(ladder)
    if np.any(steps <= 0 if increasing else steps >= 0):
        order = "increasing" if increasing else "decreasing"
        raise ValueError(f"the ladder must be strictly {order}")


def osgood_diverges(
    profile: GrowthProfile,
    a: float,
    cutoff_ladder=None,
    tolerance: float | None = None,
) -> OsgoodDiagnostic:
    """Numerical signature of ``int_0^a ds / (s r(s))`` along a decreasing cutoff ladder.

    The default ladder is ``delta_j = a 10**(-3**j)``, on which logarithmic divergence shows
    constant increments and power-type convergence geometric ones.
    """
    if not 0 < a < 1 or a > profile.domain[1]:
        raise ValueError(f"a must lie in (0, 1) within the profile domain, got {a}")
    tolerance = float(get_criteria("quadrature")["tolerance"] if tolerance is None else tolerance)

    if cutoff_ladder is None:
        cutoff_ladder = a * 10.0 ** (-_default_exponents())
    ladder = np.asarray(cutoff_ladder, dtype=float)
    _check_ladder(ladder, increasing=False)
    if ladder[0] >= a or ladder[-1] <= 0:
        raise ValueError(f"cutoffs must lie in (0, a) with a = {a}")

    # int_delta^a ds / (s r(s)) = int_{log 1/a}^{log 1/delta} du / r(e^-u), summed rung by rung
    r_u = profile.r_of_logrecip
    bounds = np.concatenate([[np.log(1.0 / a)], np.log(1.0 / ladder)])
    integrals, messages, running = [], [], 0.0
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        piece = quad(lambda u: 1.0 / r_u(u), lo, hi, tolerance)
        running += piece.value
        integrals.append(running)
        if piece.message:
            messages.append(piece.message)

    verdict = "inconclusive" if messages else _ladder_verdict(np.asarray(integrals))
    if verdict == "inconclusive":
        logger.warning(f"osgood test of `{profile.kind.value}` is inconclusive")

    return OsgoodDiagnostic(
        verdict=verdict,
        rungs=[OsgoodRung(delta=d, integral=i) for d, i in zip(ladder, integrals)],
        tolerance=tolerance,
        message=messages[0] if messages else None,
    )


def _growth_integrand(profile: GrowthProfile):
    # ds / (s r(s) + 1) with s = e^v
    return lambda v: 1.0 / (profile.r_log(v) + np.exp(-v))


def growth_psi(profile: GrowthProfile, xi: float, tolerance: float | None = None) -> float:
    """``int_1^xi ds / (s r(s) + 1)`` for a profile defined on ``[1, inf)``."""
    if not xi >= 1:
        raise ValueError(f"xi must be at least 1, got {xi}")
    if profile.domain[0] > 1 or profile.domain[1] < xi:
        raise ValueError(f"profile domain {profile.domain} does not cover [1, {xi}]")

    result = quad(_growth_integrand(profile), 0.0, float(np.log(xi)), tolerance)
    _warn_quadrature(result.message, "growth psi")
    return result.value


def growth_diverges(
    profile: GrowthProfile, R_ladder=None, tolerance: float | None = None
) -> GrowthDiagnostic:
    """Numerical signature of ``int_1^R ds / (s r(s) + 1)`` as R grows.

    Same verdict rules as :func:`osgood_diverges`; the default ladder is
    ``R_j = 10**(3**j)``.
    """
    tolerance = float(get_criteria("quadrature")["tolerance"] if tolerance is None else tolerance)
    if R_ladder is None:
        R_ladder = 10.0 ** _default_exponents()
    ladder = np.asarray(R_ladder, dtype=float)
    _check_ladder(ladder, increasing=True)
    if ladder[0] <= 1:
        raise ValueError("every R of the ladder must exceed 1")

    integrand = _growth_integrand(profile)
    bounds = np.concatenate([[0.0], np.log(ladder)])
    integrals, messages, running = [], [], 0.0
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        piece = quad(integrand, lo, hi, tolerance)
        running += piece.value
        integrals.append(running)
        if piece.message:
            messages.append(piece.message)

    verdict = "inconclusive" if messages else _ladder_verdict(np.asarray(integrals))
    return GrowthDiagnostic(
        verdict=verdict,
        rungs=[GrowthRung(R=R, integral=i) for R, i in zip(ladder, integrals)],
        tolerance=tolerance,
        message=messages[0] if messages else None,
    )


def profile_regularity(profile: GrowthProfile, s_ladder=None) -> RegularityDiagnostic:
    """``|s r'(s) / r(s)|`` along a ladder running toward the singular end of the profile.

    ``holds`` when the last values are below 0.1 and non-increasing, ``fails`` when they
    are non-decreasing and at least 0.1.
    """
    tail = int(get_criteria("osgood")["tail_rungs"])
    if s_ladder is None:
        exponents = _default_exponents()
        s_ladder = 10.0 ** (-exponents if profile.near_zero else exponents)
    s = np.asarray(s_ladder, dtype=float)
    if s.ndim != 1 or s.size < tail:
        raise ValueError(f"the ladder needs at least {tail} rungs")

    v = np.log(s)
    h = 1e-4 * np.maximum(1.0, np.abs(v))
    slope = (profile.r_log(v + h) - profile.r_log(v - h)) / (2 * h)
    values = np.abs(slope / profile.r_log(v))

    last = values[-tail:]
    if np.all(last < 0.1) and np.all(np.diff(last) <= 0):
        verdict = "holds"
    elif np.all(last >= 0.1) and np.all(np.diff(last) >= 0):
        verdict = "fails"
    else:
        verdict = "inconclusive"

    return RegularityDiagnostic(
        verdict=verdict,
        rungs=[RegularityRung(s=si, value=vi) for si, vi in zip(s, values)],
    )
