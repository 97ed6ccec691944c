"""
Poisson and residual kernels of generalized disks and the decomposition
``f(A) = g_p(f) + g_r(f)`` of the Cauchy integral over the boundary of ``X``.

On the boundary of a disk ``D`` the Cauchy kernel splits as

    (1/2 pi i) (sigma - A)^{-1} d sigma = mu(sigma, A, D) ds + nu(sigma, A, D) d sigma,

with ``mu`` Hermitian (positive semidefinite exactly when ``D`` is a spectral set) and ``nu``
analytic in ``D``. ``g_p`` integrates ``f mu`` over the pieces of the boundary of ``X``;
``g_r`` integrates ``f (nu_j - nu_k)`` over the median arcs of the tessellation.
"""

import math
from typing import Sequence

import numpy as np

from specsetlab.bounds.bounds import thm0_bound
from specsetlab.geometry.sphere_geometry import interior_margin, mobius_image_disk
from specsetlab.geometry.tessellation import build_tessellation
from specsetlab.operators.operator_core import (
    checked_solve,
    enlarge_disks,
    eval_block,
    mobius_of_matrix,
    poles_in_domain,
    resolvent,
    spectral_norm,
    spectrum_margin,
    sup_norm,
)
from specsetlab.operators.quadrature import Measure, integrate_kernel, integrate_parameter
from specsetlab.types.geometry_types import DiskKind, GeneralizedDisk, MoebiusMap, is_infinite
from specsetlab.types.operator_types import (
    DecompositionReport,
    FunctionLike,
    KernelKind,
    KernelValue,
    as_block,
    check_matrix,
)
from specsetlab.types.tessellation_types import Tessellation
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import (
    NotOnBoundaryError,
    PointAtInfinityError,
    PoleOnDomainError,
    SpectrumNotInteriorError,
)

logger = get_logger(__name__, "warning")

BOUNDARY_TOL = 1e-10


def poisson_weight(A: np.ndarray, D: GeneralizedDisk) -> np.ndarray:
    """
    Middle factor ``P`` of ``mu = (sigma - A)^{-1} P (sigma - A)^{-*}``.

    ``P`` does not depend on ``sigma``: ``(r^2 - A0 A0*) / (2 pi r)`` for an interior disk
    (``A0 = A - center``), its negative for an exterior disk and
    ``Re(exp(-i theta)(A - anchor)) / pi`` for a half-plane.
    """
    A = check_matrix(A)
    n = A.shape[0]
    match D.kind:
        case DiskKind.INTERIOR | DiskKind.EXTERIOR:
            A0 = A - D.center * np.eye(n)
            P = (D.radius**2 * np.eye(n) - A0 @ A0.conj().T) / (2.0 * math.pi * D.radius)
            return P if D.kind is DiskKind.INTERIOR else -P
        case DiskKind.HALF_PLANE:
            X = D.normal.conjugate() * (A - D.anchor * np.eye(n))
            return 0.5 * (X + X.conj().T) / math.pi


def _check_boundary_point(sigma: complex, D: GeneralizedDisk) -> None:
    if is_infinite(sigma):
        raise PointAtInfinityError("boundary kernel")
    distance = abs(interior_margin(D, sigma))
    if distance > BOUNDARY_TOL * max(1.0, abs(sigma)):
        raise NotOnBoundaryError(sigma, distance)


def _check_interior(A: np.ndarray, disks: Sequence[GeneralizedDisk], margin: float = 0.0) -> None:
    if spectrum_margin(A, disks) <= margin:
        eigenvalues = np.linalg.eigvals(A)
        worst = min(eigenvalues, key=lambda lam: min(interior_margin(D, lam) for D in disks))
        raise SpectrumNotInteriorError(complex(worst), margin)


def poisson_kernel(sigma: complex, A: np.ndarray, D: GeneralizedDisk) -> KernelValue:
    """
    ``mu(sigma, A, D)`` for ``sigma`` on the boundary, relative to arclength.

    Raises:
        NotOnBoundaryError: If ``sigma`` is farther than ``1e-10`` from the boundary.
        SpectrumNotInteriorError: If an eigenvalue of ``A`` is not interior to ``D``.
    """
    A = check_matrix(A)
    _check_boundary_point(sigma, D)
    _check_interior(A, [D])
    R = resolvent(A, sigma)
    value = R @ poisson_weight(A, D) @ R.conj().T
    return KernelValue(value=value, kind=KernelKind.POISSON, point=sigma, disk=D)


def poisson_kernel_raw(sigma: complex, tangent: complex, A: np.ndarray, D: GeneralizedDisk) -> np.ndarray:
    """
    ``mu`` straight from the split of the Cauchy kernel, given ``d sigma / ds = tangent``.

    Not Hermitian to machine precision; the factored :func:`poisson_kernel` is used for
    integration.
    """
    A = check_matrix(A)
    R = resolvent(A, sigma)
    value = R * tangent - R.conj().T * tangent.conjugate()
    if D.kind is not DiskKind.HALF_PLANE:
        value = value - tangent / (sigma - D.center) * np.eye(A.shape[0])
    return value / (2j * math.pi)


def _residual_value(z: complex, A: np.ndarray, D: GeneralizedDisk) -> np.ndarray:
    n = A.shape[0]
    adjoint = A.conj().T
    match D.kind:
        case DiskKind.INTERIOR | DiskKind.EXTERIOR:
            B = adjoint - D.center.conjugate() * np.eye(n)
            M = (z - D.center) * B - D.radius**2 * np.eye(n)
            return checked_solve(M, B, z) / (2j * math.pi)
        case DiskKind.HALF_PLANE:
            M = (z - D.anchor) * np.eye(n) + D.normal**2 * (adjoint - D.anchor.conjugate() * np.eye(n))
            return checked_solve(M, np.eye(n, dtype=complex), z) / (2j * math.pi)


def residual_kernel(z: complex, A: np.ndarray, D: GeneralizedDisk) -> KernelValue:
    """
    ``nu(z, A, D)``, analytic in ``z`` on ``D``.

    Disk variants: ``(1/2 pi i)(A* - conj(w))((z - w)(A* - conj(w)) - r^2)^{-1}``.
    Half-plane: ``(1/2 pi i)(z - a + exp(2 i theta)(A* - conj(a)))^{-1}``.

    Raises:
        PointAtInfinityError: For ``z = inf``.
        ResolventAtSpectrumError: If the inner inverse is singular.
    """
    if is_infinite(z):
        raise PointAtInfinityError("residual kernel")
    A = check_matrix(A)
    return KernelValue(value=_residual_value(complex(z), A, D), kind=KernelKind.RESIDUAL, point=z, disk=D)


def residual_difference(z: complex, A: np.ndarray, Dj: GeneralizedDisk, Dk: GeneralizedDisk) -> np.ndarray:
    return _residual_value(complex(z), A, Dj) - _residual_value(complex(z), A, Dk)


def g_poisson(
    F: FunctionLike,
    A: np.ndarray,
    tess: Tessellation,
    tol: float = 1e-9,
    **quadrature,
) -> tuple[np.ndarray, int]:
    """
    ``sum_j int_{X & boundary(D_j)} F mu(., A, D_j) ds`` and the number of panels used.

    Its norm is at most ``n ||F||_X`` when every disk is spectral for ``A``.
    """
    A = check_matrix(A)
    F = as_block(F)
    weights = [poisson_weight(A, D) for D in tess.disks]
    total = np.zeros((F.size * A.shape[0],) * 2, dtype=complex)
    panels = 0
    pieces = tess.boundary_arcs
    for piece in pieces:
        weight = weights[piece.index]

        def mu(sigma: complex, weight=weight) -> np.ndarray:
            R = resolvent(A, sigma)
            return R @ weight @ R.conj().T

        result = integrate_kernel(F, piece.arc, mu, Measure.ARCLENGTH, tol / len(pieces), **quadrature)
        total += result.value
        panels += result.panels
    return total, panels


def g_residual(
    F: FunctionLike,
    A: np.ndarray,
    tess: Tessellation,
    tol: float = 1e-9,
    **quadrature,
) -> tuple[np.ndarray, int]:
    """
    ``sum_{j<k} int_{C_jk & X_j & X_k} F (nu_j - nu_k) d sigma`` and the number of panels used.

    Each median arc is traversed with ``X_j`` on its right, which is the orientation of the
    path replacing ``X & boundary(D_j)``; the same arc reversed serves ``D_k``.
    """
    A = check_matrix(A)
    F = as_block(F)
    total = np.zeros((F.size * A.shape[0],) * 2, dtype=complex)
    panels = 0
    pieces = tess.median_arcs
    for piece in pieces:
        Dj, Dk = tess.disks[piece.j], tess.disks[piece.k]

        def difference(z: complex, Dj=Dj, Dk=Dk) -> np.ndarray:
            return residual_difference(z, A, Dj, Dk)

        result = integrate_kernel(F, piece.arc, difference, Measure.COMPLEX, tol / len(pieces), **quadrature)
        total += result.value
        panels += result.panels
    return total, panels


def decompose(
    F: FunctionLike,
    A: np.ndarray,
    disks: Sequence[GeneralizedDisk],
    tol: float = 1e-9,
    tess: Tessellation | None = None,
    touch_margin: float = 1e-8,
    epsilon_factor: float = 1e-6,
    sup_norm_kwargs: dict | None = None,
    **quadrature,
) -> DecompositionReport:
    """
    Compute ``g_p(F)``, ``g_r(F)`` and compare their sum with the direct ``F(A)``.

    If the spectrum comes closer than ``touch_margin`` to the boundary of ``X``, the disks are
    enlarged by ``epsilon_factor * max(1, ||A||)`` first (a superset of a spectral set stays
    spectral); the tessellation is then rebuilt for the enlarged family.

    Raises:
        PoleOnDomainError: If a pole of ``F`` lies in ``X``.
        SpectrumNotInteriorError: If the spectrum is outside ``X`` even after enlargement.
        QuadratureConvergenceError: Propagated from the integrals.
    """
    A = check_matrix(A)
    F = as_block(F)
    disks = tuple(disks)
    epsilon = 0.0
    if spectrum_margin(A, disks) < touch_margin:
        epsilon = epsilon_factor * max(1.0, spectral_norm(A))
        logger.info(f"spectrum touches the boundary, enlarging disks by {epsilon:.3g}")
        disks = enlarge_disks(disks, epsilon)
        tess = None
    _check_interior(A, disks)
    poles = poles_in_domain(F, disks)
    if poles:
        raise PoleOnDomainError(poles[0])
    if tess is None:
        tess = build_tessellation(disks)

    gp, panels_p = g_poisson(F, A, tess, tol, **quadrature)
    gr, panels_r = g_residual(F, A, tess, tol, **quadrature)
    direct = eval_block(F, A)
    defect = float(np.linalg.norm(gp + gr - direct, 2))
    report = DecompositionReport(
        g_poisson=gp,
        g_residual=gr,
        f_direct=direct,
        defect=defect,
        sup_norm=sup_norm(F, disks, **(sup_norm_kwargs or {})),
        bound=thm0_bound(len(disks)),
        panels=panels_p + panels_r,
        epsilon=epsilon,
    )
    logger.debug(f"decomposition defect {defect:.3g} with {report.panels} panels")
    return report


def pullback_check(
    phi: MoebiusMap, z: complex, A: np.ndarray, Dj: GeneralizedDisk, Dk: GeneralizedDisk
) -> float:
    """
    Deviation from the Moebius invariance of the form ``(nu_j - nu_k) dz``:
    ``||(nu(z, A, D_j) - nu(z, A, D_k)) - (nu(phi z, phi(A), phi D_j) - nu(phi z, phi(A), phi D_k)) phi'(z)||``.
    """
    A = check_matrix(A)
    lhs = residual_difference(z, A, Dj, Dk)
    B = mobius_of_matrix(phi, A)
    w = phi.apply(z)
    rhs = residual_difference(w, B, mobius_image_disk(phi, Dj), mobius_image_disk(phi, Dk))
    return spectral_norm(lhs - rhs * phi.derivative(z))


def empirical_cb_ratio(F: FunctionLike, A: np.ndarray, disks: Sequence[GeneralizedDisk], **kwargs) -> float:
    """``||(F_ij(A))|| / ||F||_X``; at most ``n + n(n-1)/sqrt(3)`` for spectral disks."""
    bottom = sup_norm(F, disks, **kwargs)
    return spectral_norm(eval_block(F, A)) / bottom if bottom > 0 else math.inf


def annulus_residual(F: FunctionLike, A: np.ndarray, R: float, tol: float = 1e-9) -> np.ndarray:
    """
    ``g_r(F)`` for the canonical annulus pair in closed form along the unit circle:
    ``-(R^2 - R^-2)/(2 pi) int_0^{2 pi} F(e^{it}) M(t)^{-1} dt`` with
    ``M(t) = R^2 + R^-2 - e^{it} A* - e^{-it} (A^{-1})*``.
    """
    A = check_matrix(A)
    F = as_block(F)
    n = A.shape[0]
    adjoint = A.conj().T
    inverse_adjoint = resolvent(A, 0.0).conj().T * -1.0
    constant = (R**2 + R**-2) * np.eye(n)

    def integrand(t: float) -> np.ndarray:
        u = complex(math.cos(t), math.sin(t))
        M = constant - u * adjoint - u.conjugate() * inverse_adjoint
        return np.kron(F(u), checked_solve(M, np.eye(n, dtype=complex), u))

    result = integrate_parameter(integrand, 0.0, 2.0 * math.pi, tol)
    return -(R**2 - R**-2) / (2.0 * math.pi) * result.value


def sector_residual(F: FunctionLike, A: np.ndarray, theta: float, tol: float = 1e-9) -> np.ndarray:
    """
    ``g_r(F)`` for the canonical sector pair along the positive real axis, traversed from
    infinity to 0: ``-(sin 2 theta / pi) int_0^inf F(x) M(x)^{-1} dx`` with
    ``M(x) = A* + 2 x cos 2 theta + x^2 (A*)^{-1}``.
    """
    A = check_matrix(A)
    F = as_block(F)
    n = A.shape[0]
    adjoint = A.conj().T
    inverse_adjoint = resolvent(A, 0.0).conj().T * -1.0
    identity = np.eye(n, dtype=complex)

    def integrand(u: float) -> np.ndarray:
        # x = u / (1 - u) maps [0, 1) onto [0, inf)
        x = u / (1.0 - u)
        M = adjoint + 2.0 * x * math.cos(2.0 * theta) * identity + x * x * inverse_adjoint
        return np.kron(F(x), checked_solve(M, identity, x)) / (1.0 - u) ** 2

    result = integrate_parameter(integrand, 0.0, 1.0, tol)
    return -math.sin(2.0 * theta) / math.pi * result.value
