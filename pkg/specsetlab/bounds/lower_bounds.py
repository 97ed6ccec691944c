import math

import numpy as np
from numpy.polynomial import polynomial as P

from specsetlab.bounds.bounds import _require_radius
from specsetlab.operators.operator_core import (
    eval_rational,
    jordan_block,
    poles_in_domain,
    spectral_norm,
)
from specsetlab.types.geometry_types import GeneralizedDisk
from specsetlab.types.operator_types import RationalFunction
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import PoleOnDomainError

logger = get_logger(__name__, "warning")

MAX_CIRCLE_SAMPLES = 2**22


def annulus_disks(R: float) -> tuple[GeneralizedDisk, GeneralizedDisk]:
    """``{|z| <= R}`` and ``{|z| >= 1/R}``."""
    _require_radius(R)
    return GeneralizedDisk.interior(0.0, R), GeneralizedDisk.exterior(0.0, 1.0 / R)


def jordan_parameter(R: float) -> float:
    """``t = R - 1/R``, the largest ``t`` for which both annulus disks are spectral for ``A(t)``."""
    _require_radius(R)
    return R - 1.0 / R


def jordan_block_norm(R: float, f: RationalFunction) -> float:
    """``||f(A(t))||``; at least ``t |f'(1)|`` since ``f(A(t)) = [[f(1), t f'(1)], [0, f(1)]]``."""
    return spectral_norm(eval_rational(f, jordan_block(jordan_parameter(R))))


def _circle_bound(coeffs: np.ndarray, r: float) -> float:
    return float(np.sum(np.abs(coeffs) * r ** np.arange(len(coeffs))))


def derivative_bound(f: RationalFunction, r: float) -> float:
    """
    Upper bound of ``|f'|`` on ``|z| = r`` from ``f' = p'/q - p q'/q^2``; ``|q|`` is bounded
    below by the product of the distances of the poles to the circle.
    """
    num, den = np.array(f.num), np.array(f.den)
    dp = _circle_bound(P.polyder(num), r)
    if f.is_polynomial:
        return dp
    q_low = math.prod(abs(abs(pole) - r) for pole in f.poles())
    return dp / q_low + _circle_bound(num, r) * _circle_bound(P.polyder(den), r) / q_low**2


def circle_sup_bound(
    f: RationalFunction,
    r: float,
    rel_tol: float = 1e-6,
    max_samples: int = MAX_CIRCLE_SAMPLES,
) -> float:
    """
    Upper bound of ``max |f|`` on ``|z| = r``, exact up to rounding.

    Every point of the circle is within arclength ``pi r / N`` of one of ``N`` equispaced
    samples, so the sampled maximum plus ``pi r / N`` times ``derivative_bound`` bounds the
    maximum. ``N`` doubles until that margin drops below ``rel_tol`` times the sampled maximum.
    """
    slope = derivative_bound(f, r)
    num, den = np.array(f.num), np.array(f.den)
    n = 64
    while True:
        z = r * np.exp(2j * math.pi * np.arange(n) / n)
        sampled = float(np.max(np.abs(P.polyval(z, num) / P.polyval(z, den))))
        margin = math.pi * r / n * slope
        if margin <= rel_tol * sampled or n >= max_samples:
            return sampled + margin
        n *= 2


def jordan_lower_demo(R: float, f: RationalFunction, rel_tol: float = 1e-6) -> float:
    """
    Certified lower bound ``t |f'(1)| / ||f||_X`` for the spectral constant of the annulus
    ``X = {1/R <= |z| <= R}``, using the Jordan block ``A(t)``.

    ``||f||_X`` is replaced by an upper bound taken over both boundary circles, so the returned
    value never exceeds the true ratio.

    Raises:
        InvalidRadiusError: For ``R <= 1``.
        PoleOnDomainError: If ``f`` has a pole in ``X``.
    """
    t = jordan_parameter(R)
    poles = poles_in_domain(f, annulus_disks(R))
    if poles:
        raise PoleOnDomainError(poles[0])
    sup = max(circle_sup_bound(f, r, rel_tol) for r in (R, 1.0 / R))
    ratio = t * abs(f.derivative()(1.0)) / sup if sup > 0 else math.inf
    logger.debug(f"Jordan lower bound at R={R}: {ratio:.12g} (sup bound {sup:.12g})")
    return ratio
