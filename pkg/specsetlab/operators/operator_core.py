"""
Dense matrix algebra for the functional calculus: norms, resolvents, rational functions of a
matrix and the von Neumann criteria deciding whether a generalized disk is a spectral set.
"""

import math
from typing import Sequence

import numpy as np
import scipy.linalg

from specsetlab.geometry.sphere_geometry import disk_contains, interior_margin
from specsetlab.geometry.tessellation import boundary_arcs
from specsetlab.types.geometry_types import DiskKind, GeneralizedDisk, MoebiusMap
from specsetlab.types.operator_types import (
    FunctionLike,
    RationalFunction,
    as_block,
    check_matrix,
)
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import (
    ExteriorRadiusUnderflowError,
    InvalidValue,
    PoleOnDomainError,
    ResolventAtSpectrumError,
    SingularDenominatorError,
    UnboundedOnDomainError,
)

logger = get_logger(__name__, "warning")

PIVOT_TOL = 1e-14
SPECTRAL_TOL = 1e-12
INTERIOR_MARGIN = 1e-10


def spectral_norm(M: np.ndarray) -> float:
    """Largest singular value."""
    return float(scipy.linalg.svdvals(check_matrix(M))[0])


def _factor(M: np.ndarray, scale: float) -> tuple | None:
    lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    if np.min(np.abs(np.diag(lu))) <= PIVOT_TOL * scale:
        return None
    return lu, piv


def resolvent(A: np.ndarray, sigma: complex) -> np.ndarray:
    """
    ``(sigma I - A)^{-1}`` from a pivoted LU factorization.

    Raises:
        ResolventAtSpectrumError: If a pivot falls below ``1e-14 * max(1, ||A||, |sigma|)``.
    """
    A = check_matrix(A)
    n = A.shape[0]
    scale = max(1.0, float(np.max(np.abs(A))) * n, abs(sigma))
    factors = _factor(sigma * np.eye(n) - A, scale)
    if factors is None:
        raise ResolventAtSpectrumError(sigma)
    return scipy.linalg.lu_solve(factors, np.eye(n, dtype=complex))


def checked_solve(M: np.ndarray, B: np.ndarray, point: complex) -> np.ndarray:
    """``M^{-1} B``; a singular ``M`` is reported as a resolvent evaluated at ``point``."""
    scale = max(1.0, float(np.max(np.abs(M))) * M.shape[0])
    factors = _factor(M, scale)
    if factors is None:
        raise ResolventAtSpectrumError(point)
    return scipy.linalg.lu_solve(factors, B)


def _polyval_matrix(coeffs: Sequence[complex], A: np.ndarray) -> np.ndarray:
    """Horner evaluation of an ascending coefficient list at a matrix."""
    n = A.shape[0]
    result = coeffs[-1] * np.eye(n, dtype=complex)
    for c in reversed(coeffs[:-1]):
        result = result @ A + c * np.eye(n)
    return result


def eval_rational(f: RationalFunction, A: np.ndarray) -> np.ndarray:
    """
    ``f(A) = p(A) q(A)^{-1}``.

    Raises:
        SingularDenominatorError: If ``q(A)`` is singular (a pole of ``f`` in the spectrum).
    """
    A = check_matrix(A)
    p = _polyval_matrix(f.num, A)
    q = _polyval_matrix(f.den, A)
    factors = _factor(q, max(1.0, float(np.max(np.abs(q))) * A.shape[0]))
    if factors is None:
        raise SingularDenominatorError()
    return scipy.linalg.lu_solve(factors, p)


def eval_block(F: FunctionLike, A: np.ndarray) -> np.ndarray:
    """Block matrix ``(F_ij(A))``; reduces to ``f(A)`` for a scalar function."""
    F = as_block(F)
    return np.block([[eval_rational(f, A) for f in row] for row in F.blocks])


def mobius_of_matrix(phi: MoebiusMap, A: np.ndarray) -> np.ndarray:
    """``phi(A) = (a A + b)(c A + d)^{-1}``."""
    A = check_matrix(A)
    n = A.shape[0]
    top = phi.a * A + phi.b * np.eye(n)
    bottom = phi.c * A + phi.d * np.eye(n)
    return checked_solve(bottom.T, top.T, phi.pole).T


def numerical_range_bounds(A: np.ndarray) -> tuple[float, float]:
    """Smallest and largest eigenvalue of the Hermitian part ``(A + A*) / 2``."""
    A = check_matrix(A)
    values = scipy.linalg.eigvalsh(0.5 * (A + A.conj().T))
    return float(values[0]), float(values[-1])


def jordan_block(t: float) -> np.ndarray:
    """``[[1, t], [0, 1]]``; norm and inverse norm both equal ``R`` for ``t = R - 1/R``."""
    return np.array([[1.0, t], [0.0, 1.0]], dtype=complex)


def is_spectral(A: np.ndarray, D: GeneralizedDisk, tol: float = SPECTRAL_TOL) -> bool:
    """
    Von Neumann criterion for ``D`` to be a spectral set of ``A``.

    Interior disk: ``||A - w|| <= r``. Exterior disk: ``||(A - w)^{-1}|| <= 1/r``. Half-plane:
    the Hermitian part of ``exp(-i theta)(A - a)`` is positive semidefinite.

    Raises:
        ResolventAtSpectrumError: For an exterior disk whose center is an eigenvalue of ``A``.
    """
    A = check_matrix(A)
    n = A.shape[0]
    scale = max(1.0, spectral_norm(A))
    match D.kind:
        case DiskKind.INTERIOR:
            return spectral_norm(A - D.center * np.eye(n)) <= D.radius + tol * max(1.0, D.radius)
        case DiskKind.EXTERIOR:
            smallest = float(scipy.linalg.svdvals(A - D.center * np.eye(n))[-1])
            if smallest <= PIVOT_TOL * max(scale, abs(D.center)):
                raise ResolventAtSpectrumError(D.center)
            return smallest >= D.radius - tol * max(1.0, D.radius)
        case DiskKind.HALF_PLANE:
            rotated = D.normal.conjugate() * (A - D.anchor * np.eye(n))
            return numerical_range_bounds(rotated)[0] >= -tol * scale


def spectrum_margin(A: np.ndarray, disks: Sequence[GeneralizedDisk]) -> float:
    """Smallest signed distance from an eigenvalue of ``A`` to the boundary of a disk."""
    eigenvalues = scipy.linalg.eigvals(check_matrix(A))
    return min(interior_margin(D, complex(lam)) for D in disks for lam in eigenvalues)


def spectrum_in_interior(
    A: np.ndarray, disks: Sequence[GeneralizedDisk], margin: float = INTERIOR_MARGIN
) -> bool:
    return spectrum_margin(A, disks) > margin


def enlarge_disks(disks: Sequence[GeneralizedDisk], epsilon: float) -> tuple[GeneralizedDisk, ...]:
    """
    Replace every disk by its ``epsilon``-neighbourhood.

    Raises:
        InvalidValue: If ``epsilon <= 0``.
        ExteriorRadiusUnderflowError: If an exterior radius would become non-positive.
    """
    if not epsilon > 0:
        raise InvalidValue("epsilon", epsilon, "must be positive")
    enlarged = []
    for D in disks:
        match D.kind:
            case DiskKind.INTERIOR:
                enlarged.append(GeneralizedDisk.interior(D.center, D.radius + epsilon))
            case DiskKind.EXTERIOR:
                if D.radius - epsilon <= 0:
                    raise ExteriorRadiusUnderflowError(D.radius, epsilon)
                enlarged.append(GeneralizedDisk.exterior(D.center, D.radius - epsilon))
            case DiskKind.HALF_PLANE:
                enlarged.append(GeneralizedDisk.half_plane(D.theta, D.anchor - epsilon * D.normal))
    return tuple(enlarged)


def poles_in_domain(F: FunctionLike, disks: Sequence[GeneralizedDisk], tol: float = 1e-12) -> list[complex]:
    return [
        complex(p) for p in as_block(F).poles() if all(disk_contains(D, complex(p), tol) for D in disks)
    ]


def _chebyshev_parameters(t0: float, t1: float, count: int) -> np.ndarray:
    k = np.arange(count)
    nodes = np.cos(math.pi * (k + 0.5) / count)
    return np.concatenate(([t0], 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * nodes[::-1], [t1]))


def sup_norm(
    F: FunctionLike,
    disks: Sequence[GeneralizedDisk],
    samples: int = 64,
    rel_tol: float = 1e-6,
    max_refinements: int = 200,
) -> float:
    """
    ``max ||F(z)||`` over ``z`` in the boundary of ``X``, the intersection of ``disks``.

    Each boundary arc is sampled at Chebyshev-spaced parameters; the running maximum is refined
    by repeated subdivision of the bracket around the best sample until successive estimates
    agree to ``rel_tol``.

    Raises:
        PoleOnDomainError: If a pole of ``F`` lies in ``X``.
        UnboundedOnDomainError: If ``X`` contains infinity and ``F`` does not stay bounded there.
    """
    F = as_block(F)
    poles = poles_in_domain(F, disks)
    if poles:
        raise PoleOnDomainError(poles[0])
    contains_infinity = all(D.contains_infinity for D in disks)
    if contains_infinity and not F.is_bounded_at_infinity:
        raise UnboundedOnDomainError()

    def value(arc, t: float) -> float:
        return float(np.linalg.norm(F(arc.point(t)), 2))

    best = float(np.linalg.norm(F(complex("inf")), 2)) if contains_infinity else 0.0
    for piece in boundary_arcs(disks):
        arc = piece.arc
        ts = _chebyshev_parameters(arc.t_start, arc.t_end, samples)
        values = [value(arc, t) for t in ts]
        i = int(np.argmax(values))
        lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, len(ts) - 1)]
        current = values[i]
        for _ in range(max_refinements):
            grid = np.linspace(lo, hi, 7)
            grid_values = [value(arc, t) for t in grid]
            j = int(np.argmax(grid_values))
            improved = max(current, grid_values[j])
            step = (hi - lo) / 6.0
            lo, hi = max(grid[j] - step, arc.t_start), min(grid[j] + step, arc.t_end)
            converged = improved - current <= rel_tol * max(improved, 1e-300)
            current = improved
            if converged and hi - lo < 1e-3 * arc.span:
                break
        best = max(best, current)
    logger.debug(f"sup norm {best:.12g} over {len(disks)} disks")
    return best
