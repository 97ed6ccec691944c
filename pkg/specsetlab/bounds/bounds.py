"""
Scalar bounds for the spectral constant of annuli, sectors and disk intersections.

All formulas are closed forms or rapidly convergent series/products. Infinite products are
truncated once the next factor is within ``tol`` of one; the result carries the bracket
``[gamma_k, 2]`` for the truncated tail.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.integrate
import scipy.optimize

from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import (
    InvalidAngleError,
    InvalidRadiusError,
    InvalidValue,
    NoCrossoverError,
)

logger = get_logger(__name__, "warning")

SQRT3 = math.sqrt(3.0)
CROSSOVER_XTOL = 1e-9


def _require_radius(R: float, strict: bool = True) -> None:
    if not math.isfinite(R) or (R <= 1.0 if strict else R < 1.0):
        raise InvalidRadiusError(R, strict=strict)


def shields_bound(R: float) -> float:
    """``2 + sqrt((R^2 + 1) / (R^2 - 1))``; diverges as ``R -> 1``."""
    _require_radius(R)
    return 2.0 + math.sqrt((R * R + 1.0) / ((R - 1.0) * (R + 1.0)))


def thm1_upper(R: float) -> float:
    """``2 + (R + 1) / sqrt(R^2 + R + 1)``, decreasing from ``2 + 2/sqrt(3)`` to 3."""
    _require_radius(R, strict=False)
    return 2.0 + h_annulus(R)


def thm0_bound(n: int) -> float:
    """``n + n(n - 1)/sqrt(3)`` for an intersection of ``n`` spectral disks."""
    if n < 1:
        raise InvalidValue("n", n, "(need at least one disk)")
    return n + n * (n - 1) / SQRT3


def h_annulus(R: float) -> float:
    """Complete bound ``(R + 1)/sqrt(R^2 + R + 1)`` of the residual part on an annulus."""
    _require_radius(R, strict=False)
    return (R + 1.0) / math.sqrt(R * R + R + 1.0)


def h_sector(theta: float) -> float:
    """
    ``(sin 2 theta / pi) int_0^inf dx / (x^2 sin^2 theta + 2 x cos 2 theta + 1)``.

    Evaluated in a form that stays finite through ``theta = pi/6`` (where the discriminant
    vanishes), ``theta = pi/4`` and ``theta = pi/2``; the value at ``pi/2`` is ``2/sqrt(3)``.

    Raises:
        InvalidAngleError: Outside ``(0, pi/2]``.
    """
    if not (0.0 < theta <= math.pi / 2):
        raise InvalidAngleError(theta, "(0, pi/2]")
    s, c = math.sin(theta), math.cos(theta)
    cos2 = math.cos(2.0 * theta)
    if s >= 0.5:
        q = math.sqrt((1.0 + 2.0 * s) * (2.0 * s - 1.0))
        if q < 1e-8:
            return 2.0 * s * c / (math.pi * cos2)
        return 2.0 * s / (math.pi * q) * math.atan2(c * q, cos2)
    p = math.sqrt((1.0 + 2.0 * s) * (1.0 - 2.0 * s))
    return 2.0 * s / (math.pi * p) * math.atanh(c * p / cos2)


def h_sector_quadrature(theta: float) -> float:
    """Direct numerical integration of the :func:`h_sector` integral."""
    if not (0.0 < theta <= math.pi / 2):
        raise InvalidAngleError(theta, "(0, pi/2]")
    s2, cos2 = math.sin(theta) ** 2, math.cos(2.0 * theta)
    value, _ = scipy.integrate.quad(
        lambda x: 1.0 / (x * x * s2 + 2.0 * x * cos2 + 1.0), 0.0, np.inf, epsabs=1e-14, epsrel=1e-13
    )
    return math.sin(2.0 * theta) / math.pi * value


def h_annulus_quadrature(R: float, phase: float = 0.0) -> float:
    """
    ``(R^2 - R^-2)/(2 pi) int_0^{2 pi} dt / (R^2 + R^-2 - rho + 1 - (rho + 1) cos(t + phase))``
    with ``rho = (R + 1/R)/2``; independent of ``phase`` and equal to :func:`h_annulus`.
    """
    _require_radius(R)
    rho = 0.5 * (R + 1.0 / R)
    constant = R * R + R**-2 - rho + 1.0
    value, _ = scipy.integrate.quad(
        lambda t: 1.0 / (constant - (rho + 1.0) * math.cos(t + phase)),
        0.0,
        2.0 * math.pi,
        epsabs=1e-14,
        epsrel=1e-13,
    )
    return (R * R - R**-2) / (2.0 * math.pi) * value


def psi_lower(t: float) -> float:
    """``2 t (1 + t^2)^2 / ((1 + t)(1 + t^2 + t^4))``; ``gamma_1(R) = psi_lower(R^2)``."""
    t2 = t * t
    return 2.0 * t * (1.0 + t2) ** 2 / ((1.0 + t) * (1.0 + t2 + t2 * t2))


def gamma_1(R: float) -> float:
    """Lower bound for the annulus constant; ``4/3`` at ``R = 1``, increasing to 2."""
    _require_radius(R, strict=False)
    return psi_lower(R * R)


def _gamma_factor(x: float, n: int) -> float:
    # (1 - x^{2n})^2 / ((1 - x^{2n-1})(1 - x^{2n+1})), each 1 - x^m = -expm1(m log x)
    log_x = math.log(x)
    a = -math.expm1(2 * n * log_x)
    b = -math.expm1((2 * n - 1) * log_x)
    c = -math.expm1((2 * n + 1) * log_x)
    return a * a / (b * c)


def gamma_k(R: float, k: int) -> float:
    """
    Partial product ``gamma_k(R) = 2/(1 + R^-2) prod_{n=1}^{k} (1 - x^{2n})^2 / ((1 - x^{2n-1})(1 - x^{2n+1}))``
    with ``x = R^-4``; increasing in ``k`` with limit ``gamma(R) <= 2``.
    """
    _require_radius(R)
    if k < 1:
        raise InvalidValue("k", k, "(must be positive)")
    x = R**-4
    value = 2.0 / (1.0 + R**-2)
    for n in range(1, k + 1):
        value *= _gamma_factor(x, n)
    return value


@dataclass(frozen=True)
class GammaEstimate:
    value: float
    terms: int
    lower: float
    upper: float
    converged: bool

    def asdict(self) -> dict:
        return {
            "value": self.value,
            "terms": self.terms,
            "lower": self.lower,
            "upper": self.upper,
            "converged": self.converged,
        }


def gamma_estimate(R: float, tol: float = 1e-15, max_terms: int = 10_000) -> GammaEstimate:
    """
    Truncated infinite product ``gamma(R) = lim gamma_k(R)``.

    Stops when the next factor differs from one by less than ``tol``; near ``R = 1`` the cap
    ``max_terms`` applies and the estimate reports the bracket ``[gamma_k, 2]``.
    """
    _require_radius(R)
    x = R**-4
    value = 2.0 / (1.0 + R**-2)
    converged = False
    terms = 0
    for n in range(1, max_terms + 1):
        factor = _gamma_factor(x, n)
        value *= factor
        terms = n
        if abs(factor - 1.0) < tol:
            converged = True
            break
    if not converged:
        logger.info(f"gamma({R}) truncated after {terms} factors")
    return GammaEstimate(
        value=value, terms=terms, lower=value, upper=value if converged else 2.0, converged=converged
    )


def gamma(R: float, tol: float = 1e-15, max_terms: int = 10_000) -> float:
    return gamma_estimate(R, tol, max_terms).value


def paulsen_psi(R: float, term_tol: float = 1e-16) -> float:
    """``sum_{n>=1} 4 / (1 + R^{2n})``, truncated once a term drops below ``term_tol``."""
    _require_radius(R)
    total, n = 0.0, 1
    while True:
        term = 4.0 / (1.0 + R ** (2 * n)) if 2 * n * math.log(R) < 700 else 0.0
        total += term
        if term < term_tol:
            return total
        n += 1


def paulsen_bound(R: float) -> float:
    """``max(3, 2 + psi(R))``."""
    return max(3.0, 2.0 + paulsen_psi(R))


def crossover(
    f: Callable[[float], float],
    g: Callable[[float], float],
    bracket: tuple[float, float],
    xtol: float = CROSSOVER_XTOL,
) -> float:
    """
    Root of ``f - g`` in ``bracket`` by bisection.

    Raises:
        NoCrossoverError: If ``f - g`` has the same sign at both ends.
    """
    lo, hi = bracket
    difference = lambda R: f(R) - g(R)  # noqa: E731
    d_lo, d_hi = difference(lo), difference(hi)
    if d_lo == 0.0:
        return lo
    if d_hi == 0.0:
        return hi
    if d_lo * d_hi > 0:
        raise NoCrossoverError(bracket)
    return float(scipy.optimize.bisect(difference, lo, hi, xtol=xtol))


def paulsen_crossovers() -> dict[str, float]:
    """
    Radii where the Paulsen series bound overtakes the other bounds, plus the point where the
    annulus bound drops below the Shields bound for good.
    """
    paulsen = lambda R: 2.0 + paulsen_psi(R)  # noqa: E731
    return {
        "paulsen_shields": crossover(paulsen, shields_bound, (1.2, 3.0)),
        "paulsen_thm1": crossover(paulsen, thm1_upper, (1.5, 3.0)),
        "paulsen_three": crossover(paulsen, lambda R: 3.0, (1.5, 3.0)),
        "shields_thm1": crossover(shields_bound, thm1_upper, (3.0, 3.5)),
    }
