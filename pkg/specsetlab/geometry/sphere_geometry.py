"""
Circline and generalized-disk geometry on the Riemann sphere.

Disks are handled through their signed Hermitian forms (see
:mod:`specsetlab.types.geometry_types`). A point ``z`` is represented homogeneously by
``v = (z, 1)`` or ``v = (1, 0)`` for infinity, so that containment, Moebius images and the
Caratheodory distance reduce to small matrix products.
"""

import cmath
import math
from typing import Iterable, Sequence

import numpy as np

from specsetlab.types.geometry_types import (
    INFINITY,
    TWO_PI,
    CanonicalPairConfig,
    Circline,
    DiskKind,
    GeneralizedDisk,
    MoebiusMap,
    OrientedArc,
    PairCase,
    PairRelation,
    is_infinite,
)
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import (
    DegenerateGeometryError,
    EmptyInteriorError,
    IdenticalBoundariesError,
    NestedDisksError,
    PointAtInfinityError,
    PointOutsideDiskError,
)

logger = get_logger(__name__, "warning")

ABS_TOL = 1e-12
TANGENCY_TOL = 1e-9


# points and forms


def homogeneous(z: complex) -> np.ndarray:
    if is_infinite(z):
        return np.array([1.0, 0.0], dtype=complex)
    return np.array([complex(z), 1.0], dtype=complex)


def from_homogeneous(v: np.ndarray, tol: float = 1e-13) -> complex:
    if abs(v[1]) <= tol * abs(v[0]):
        return INFINITY
    return complex(v[0] / v[1])


def form_value(H: np.ndarray, z: complex | np.ndarray) -> float:
    """``v* H v`` for the homogeneous vector of ``z`` (or a given vector)."""
    v = z if isinstance(z, np.ndarray) else homogeneous(z)
    return float(np.real(np.vdot(v, H @ v)))


def disk_contains(D: GeneralizedDisk, z: complex, tol: float = ABS_TOL) -> bool:
    """True iff ``z`` (possibly infinity) lies in the closed disk ``D``."""
    return form_value(D.hermitian(), z) <= tol


def interior_margin(D: GeneralizedDisk, z: complex) -> float:
    """Signed Euclidean distance from ``z`` to the boundary of ``D``, positive inside."""
    if is_infinite(z):
        return math.inf if D.contains_infinity else -math.inf
    match D.kind:
        case DiskKind.INTERIOR:
            return D.radius - abs(z - D.center)
        case DiskKind.EXTERIOR:
            return abs(z - D.center) - D.radius
        case DiskKind.HALF_PLANE:
            return (D.normal.conjugate() * (z - D.anchor)).real


def caratheodory_distance(z: complex, D: GeneralizedDisk) -> float:
    """
    Caratheodory distance ``d(z, D) = (1 - |phi(z)|^2) / |phi'(z)|`` for a Riemann map ``phi`` of
    ``D`` onto the unit disk.

    Equals ``|r^2 - |z - center|^2| / r`` for the disk variants and
    ``2 Re(exp(-i theta)(z - anchor))`` for half-planes.

    Raises:
        PointAtInfinityError: For ``z = inf``.
        PointOutsideDiskError: If ``z`` is not in ``D``.
    """
    if is_infinite(z):
        raise PointAtInfinityError("caratheodory_distance")
    value = -form_value(D.hermitian(), z)
    if value < -ABS_TOL:
        raise PointOutsideDiskError(z)
    return max(value, 0.0)


def distance_profile(disks: Sequence[GeneralizedDisk], z: complex) -> np.ndarray:
    """
    Homogeneous Caratheodory values of ``z`` for every disk.

    For finite ``z`` these are the distances themselves; at infinity they are the values
    for ``v = (1, 0)``, which preserves the ordering between disks.
    """
    v = homogeneous(z)
    return np.array([-form_value(D.hermitian(), v) for D in disks])


# boundaries and charts


def disk_chart(D: GeneralizedDisk) -> MoebiusMap:
    """Moebius map of the closed unit disk onto ``D``."""
    match D.kind:
        case DiskKind.INTERIOR:
            return MoebiusMap(D.radius, D.center, 0, 1)
        case DiskKind.EXTERIOR:
            return MoebiusMap(D.center, D.radius, 1, 0)
        case DiskKind.HALF_PLANE:
            e, a = D.normal, D.anchor
            return MoebiusMap(e - a, a + e, -1, 1)


def circline_chart(H: np.ndarray) -> MoebiusMap:
    """Moebius map of the closed unit disk onto ``{v* H v <= 0}`` for ``det H < 0``."""
    H = 0.5 * (H + H.conj().T)
    values, vectors = np.linalg.eigh(H)
    if not (values[0] < 0 < values[1]):
        raise DegenerateGeometryError(f"form with eigenvalues {values} is not a circline")
    psi = np.column_stack(
        [vectors[:, 1] / math.sqrt(values[1]), vectors[:, 0] / math.sqrt(-values[0])]
    )
    return MoebiusMap.from_matrix(psi)


def boundary_arc(D: GeneralizedDisk) -> OrientedArc:
    """
    Full boundary of ``D`` with ``D`` on the left, i.e. ``(1/i) d sigma/ds`` is the outward normal.

    Interior disks run counterclockwise, exteriors clockwise, half-planes in the direction
    ``-i exp(i theta)``.
    """
    return OrientedArc(carrier=D.boundary, chart=disk_chart(D), t_start=0.0, t_end=TWO_PI)


def boundary_point(D: GeneralizedDisk, s: float) -> tuple[complex, complex]:
    """Arclength parametrization ``(sigma(s), d sigma/ds)`` of the positively oriented boundary."""
    match D.kind:
        case DiskKind.INTERIOR:
            u = cmath.exp(1j * s / D.radius)
            return D.center + D.radius * u, 1j * u
        case DiskKind.EXTERIOR:
            u = cmath.exp(-1j * s / D.radius)
            return D.center + D.radius * u, -1j * u
        case DiskKind.HALF_PLANE:
            direction = -1j * D.normal
            return D.anchor + s * direction, direction


# Moebius action


def mobius_apply(phi: MoebiusMap, z: complex) -> complex:
    return phi.apply(z)


def mobius_derivative(phi: MoebiusMap, z: complex) -> complex:
    return phi.derivative(z)


def mobius_compose(phi: MoebiusMap, psi: MoebiusMap) -> MoebiusMap:
    """``phi o psi``."""
    return phi.compose(psi)


def mobius_inverse(phi: MoebiusMap) -> MoebiusMap:
    return phi.inverse()


def mobius_image_form(phi: MoebiusMap, H: np.ndarray) -> np.ndarray:
    """Form of the image set: ``M^{-*} H M^{-1}``; keeps ``det`` and the sign convention."""
    inv = phi.inverse().matrix()
    return inv.conj().T @ H @ inv


def mobius_image_disk(phi: MoebiusMap, D: GeneralizedDisk) -> GeneralizedDisk:
    """Exact image ``phi(D)``; the variant follows from where the pole of ``phi`` lies."""
    return GeneralizedDisk.from_hermitian(mobius_image_form(phi, D.hermitian()))


def mobius_image_circline(phi: MoebiusMap, C: Circline) -> Circline:
    return Circline.from_hermitian(mobius_image_form(phi, C.hermitian()))


def sending(zero: np.ndarray, infinity: np.ndarray, scale: complex = 1.0) -> MoebiusMap:
    """Map taking the homogeneous point ``zero`` to 0 and ``infinity`` to infinity."""
    return MoebiusMap(
        scale * zero[1], -scale * zero[0], infinity[1], -infinity[0]
    )


# restriction of forms to a circline


def _restricted(chart: MoebiusMap, H: np.ndarray) -> tuple[float, complex]:
    """
    ``g(t) = s + 2 Re(g21 exp(i t))`` is the value of ``H`` at ``chart(exp(i t))``.
    """
    P = chart.matrix()
    G = P.conj().T @ H @ P
    return float((G[0, 0] + G[1, 1]).real), complex(G[1, 0])


def _roots(s: float, g21: complex, tangency_tol: float = 0.0) -> tuple[float, ...]:
    """Zeros of ``s + 2 Re(g21 exp(i t))`` in ``[0, 2 pi)``, a double root reported once."""
    if abs(g21) <= 1e-15 * abs(s):
        return ()
    kappa = -s / (2.0 * abs(g21))
    if abs(kappa) > 1.0 + tangency_tol:
        return ()
    base = -cmath.phase(g21)
    if abs(kappa) >= 1.0 - tangency_tol:
        return ((base + (0.0 if kappa > 0 else math.pi)) % TWO_PI,)
    delta = math.acos(kappa)
    return tuple(sorted(((base + delta) % TWO_PI, (base - delta) % TWO_PI)))


def chart_vector(chart: MoebiusMap, t: float) -> np.ndarray:
    return chart.matrix() @ np.array([cmath.exp(1j * t), 1.0], dtype=complex)


def circline_sections(
    chart: MoebiusMap, conditions: Sequence[np.ndarray], tol: float = ABS_TOL
) -> list[tuple[float, float]]:
    """
    Parameter intervals of the circle ``chart(exp(i t))`` on which every ``v* H v <= 0``.

    Breakpoints are the exact zeros of the restricted forms. Each candidate interval is
    classified by its midpoint and two quarter points; accepted neighbours are merged across
    the ``2 pi`` seam. Returns ``[(t0, t1), ...]`` with ``0 <= t0 < 2 pi`` and ``t1 > t0``.
    """
    restricted = []
    breakpoints: list[float] = []
    for H in conditions:
        s, g21 = _restricted(chart, H)
        scale = abs(s) + 2.0 * abs(g21)
        if scale == 0.0:
            continue
        restricted.append((s, g21, scale))
        breakpoints.extend(_roots(s, g21))

    def satisfied(t: float) -> bool:
        w = cmath.exp(1j * t)
        return all(s + 2.0 * (g21 * w).real <= tol * scale for s, g21, scale in restricted)

    if not breakpoints:
        return [(0.0, TWO_PI)] if satisfied(0.5) else []

    points = sorted(breakpoints)
    unique = [points[0]]
    for t in points[1:]:
        if t - unique[-1] > 1e-12:
            unique.append(t)
    if len(unique) > 1 and unique[0] + TWO_PI - unique[-1] <= 1e-12:
        unique.pop()

    candidates = [
        (lo, hi) for lo, hi in zip(unique, unique[1:] + [unique[0] + TWO_PI]) if hi - lo > 1e-12
    ]
    flags = []
    for lo, hi in candidates:
        votes = [satisfied(lo + frac * (hi - lo)) for frac in (0.5, 0.25, 0.75)]
        if len(set(votes)) > 1:
            logger.debug(f"inconsistent classification on ({lo:.6g}, {hi:.6g}): {votes}")
        flags.append(sum(votes) >= 2)

    if all(flags):
        return [(candidates[0][0], candidates[0][0] + TWO_PI)]
    if not any(flags):
        return []

    # rotate so the list starts right after a rejected interval, then merge runs
    first = next(i for i in range(len(flags)) if not flags[i - 1] and flags[i])
    order = candidates[first:] + [(lo + TWO_PI, hi + TWO_PI) for lo, hi in candidates[:first]]
    accepted = flags[first:] + flags[:first]
    sections: list[tuple[float, float]] = []
    for (lo, hi), keep in zip(order, accepted):
        if not keep:
            continue
        if sections and abs(sections[-1][1] - lo) <= 1e-12:
            sections[-1] = (sections[-1][0], hi)
        else:
            sections.append((lo, hi))
    return [
        (lo % TWO_PI, lo % TWO_PI + (hi - lo)) for lo, hi in sorted(sections, key=lambda x: x[0] % TWO_PI)
    ]


# pairs of disks


def boundary_intersection(
    D1: GeneralizedDisk, D2: GeneralizedDisk, tangency_tol: float = TANGENCY_TOL
) -> tuple[complex, ...]:
    """
    Intersection points of the two boundary circlines (0, 1 or 2 points, infinity last).

    Raises:
        IdenticalBoundariesError: If both boundaries are the same circline.
    """
    vectors = _intersection_vectors(D1, D2, tangency_tol)
    points = [from_homogeneous(v) for v in vectors]
    finite = sorted((p for p in points if not is_infinite(p)), key=lambda p: (p.real, p.imag))
    return tuple(finite + [p for p in points if is_infinite(p)])


def _intersection_parameters(
    D1: GeneralizedDisk, D2: GeneralizedDisk, tangency_tol: float
) -> tuple[float, ...]:
    if D1.boundary.isclose(D2.boundary, tol=1e-12):
        raise IdenticalBoundariesError()
    s, g21 = _restricted(disk_chart(D1), D2.hermitian())
    return _roots(s, g21, tangency_tol)


def _intersection_vectors(
    D1: GeneralizedDisk, D2: GeneralizedDisk, tangency_tol: float
) -> list[np.ndarray]:
    chart = disk_chart(D1)
    return [chart_vector(chart, t) for t in _intersection_parameters(D1, D2, tangency_tol)]


def _strictly_inside(H: np.ndarray, v: np.ndarray) -> bool:
    return form_value(H, v) < -1e-10 * float(np.vdot(v, v).real)


def _pair_analysis(
    D1: GeneralizedDisk, D2: GeneralizedDisk, tangency_tol: float
) -> tuple[PairRelation, bool, bool]:
    if D1.boundary.isclose(D2.boundary, tol=1e-12):
        return PairRelation.IDENTICAL, False, False
    params1 = _intersection_parameters(D1, D2, tangency_tol)
    params2 = _intersection_parameters(D2, D1, tangency_tol)
    count = len(params1)
    if count == 2:
        return PairRelation.CROSSING, False, False
    # a boundary point away from the (possible) tangency point
    probe1 = chart_vector(disk_chart(D1), params1[0] + math.pi if params1 else 0.0)
    probe2 = chart_vector(disk_chart(D2), params2[0] + math.pi if params2 else 0.0)
    c1_in_d2 = _strictly_inside(D2.hermitian(), probe1)
    c2_in_d1 = _strictly_inside(D1.hermitian(), probe2)
    match (c1_in_d2, c2_in_d1):
        case (True, True):
            relation = PairRelation.SEPARATED if count == 0 else PairRelation.TANGENT_STRIP
        case (True, False) | (False, True):
            relation = PairRelation.NESTED
        case _:
            relation = PairRelation.DISJOINT if count == 0 else PairRelation.TANGENT_OUTSIDE
    return relation, c1_in_d2, c2_in_d1


def classify_pair(
    D1: GeneralizedDisk, D2: GeneralizedDisk, tangency_tol: float = TANGENCY_TOL
) -> PairRelation:
    """
    Relative position of two generalized disks.

    ``CROSSING``, ``SEPARATED`` and ``TANGENT_STRIP`` are the admissible configurations
    (boundaries meeting twice, never, or tangentially with the interiors overlapping).
    """
    return _pair_analysis(D1, D2, tangency_tol)[0]


def is_subset(inner: GeneralizedDisk, outer: GeneralizedDisk, tangency_tol: float = TANGENCY_TOL) -> bool:
    """True iff ``inner`` is contained in ``outer`` (identical disks included)."""
    if np.allclose(inner.hermitian(), outer.hermitian(), atol=1e-12):
        return True
    relation, inner_boundary_in_outer, _ = _pair_analysis(inner, outer, tangency_tol)
    return relation is PairRelation.NESTED and inner_boundary_in_outer


def _require_admissible(
    D1: GeneralizedDisk, D2: GeneralizedDisk, tangency_tol: float
) -> PairRelation:
    relation, c1_in_d2, _ = _pair_analysis(D1, D2, tangency_tol)
    match relation:
        case PairRelation.IDENTICAL:
            raise IdenticalBoundariesError()
        case PairRelation.NESTED:
            raise NestedDisksError(*((0, 1) if c1_in_d2 else (1, 0)))
        case PairRelation.DISJOINT | PairRelation.TANGENT_OUTSIDE:
            raise EmptyInteriorError(f"disks {D1!r} and {D2!r} only share boundary points")
    return relation


def median_form(Dj: GeneralizedDisk, Dk: GeneralizedDisk) -> np.ndarray:
    """
    Signed form of the median circline; ``<= 0`` on the side where ``Dk`` is the closer disk.
    """
    return Dj.hermitian() - Dk.hermitian()


def median_circline(
    Dj: GeneralizedDisk, Dk: GeneralizedDisk, tangency_tol: float = TANGENCY_TOL
) -> Circline:
    """
    Circline carrying ``{z in Dj & Dk : d(z, Dj) = d(z, Dk)}``.

    Raises:
        NestedDisksError: If one disk contains the other.
        EmptyInteriorError: If the intersection has empty interior.
        IdenticalBoundariesError: If the boundaries coincide.
    """
    _require_admissible(Dj, Dk, tangency_tol)
    return Circline.from_hermitian(median_form(Dj, Dk))


def _avoid_reference(
    phi: MoebiusMap, avoid: Sequence[complex], fallback: np.ndarray
) -> list[complex]:
    images = [phi.apply(z) for z in avoid]
    images = [w for w in images if not is_infinite(w) and abs(w) > 0]
    if images:
        return images
    return [from_homogeneous(phi.matrix() @ fallback)]


def _check_pole(phi: MoebiusMap, avoid: Sequence[complex]) -> None:
    pole = phi.pole
    for z in avoid:
        if not is_infinite(pole) and abs(z - pole) <= 1e-10 * max(1.0, abs(z)):
            raise DegenerateGeometryError(f"pole {pole} of the normalizing map lies on {z}")


def normalize_pair(
    D1: GeneralizedDisk,
    D2: GeneralizedDisk,
    avoid: Iterable[complex] = (),
    tangency_tol: float = TANGENCY_TOL,
) -> CanonicalPairConfig:
    """
    Moebius normalization of an admissible disk pair.

    Separated boundaries give the annulus pair (the limit points of the coaxial pencil go to
    0 and infinity), crossing boundaries give the symmetric sector pair (the intersection
    points go to 0 and infinity) and tangent boundaries give the strip pair (the tangency point
    goes to infinity). The ordered pair fixes which point becomes the pole; the remaining
    freedom (rotation, dilation, real translation) is used to center ``avoid`` (e.g. the
    spectrum) in the canonical picture.

    Args:
        D1 (GeneralizedDisk): First disk.
        D2 (GeneralizedDisk): Second disk.
        avoid (Iterable[complex]): Points the pole must avoid; used for centering.
        tangency_tol (float): Tolerance for declaring tangency.

    Returns:
        CanonicalPairConfig: Case, parameter and normalizing map.

    Raises:
        NestedDisksError, EmptyInteriorError, IdenticalBoundariesError: For inadmissible pairs.
    """
    avoid = tuple(avoid)
    relation = _require_admissible(D1, D2, tangency_tol)
    match relation:
        case PairRelation.SEPARATED:
            config = _normalize_annulus(D1, D2)
        case PairRelation.CROSSING:
            config = _normalize_sector(D1, D2, avoid, tangency_tol)
        case PairRelation.TANGENT_STRIP:
            config = _normalize_strip(D1, D2, avoid, tangency_tol)
    _check_pole(config.mapping, avoid)
    logger.debug(f"normalized pair as {config.case.value} with parameter {config.parameter}")
    return config


def _normalize_annulus(D1: GeneralizedDisk, D2: GeneralizedDisk) -> CanonicalPairConfig:
    H1, H2 = D1.hermitian(), D2.hermitian()
    beta = float(
        (H1[0, 0] * H2[1, 1] + H1[1, 1] * H2[0, 0]).real - 2.0 * (H1[0, 1] * H2[0, 1].conjugate()).real
    )
    root = math.sqrt(max(beta * beta - 4.0, 0.0))
    limit_points = []
    for lam in ((-beta + root) / 2.0, (-beta - root) / 2.0):
        K = H1 - lam * H2
        candidates = (np.array([-K[0, 1], K[0, 0]]), np.array([K[1, 1], -K[1, 0]]))
        v = max(candidates, key=lambda x: float(np.linalg.norm(x)))
        limit_points.append(v / np.linalg.norm(v))
    # the limit point inside D1 and outside D2 goes to 0
    limit_points.sort(key=lambda v: form_value(H1, v) - form_value(H2, v))
    phi = sending(limit_points[0], limit_points[1])
    rho1 = mobius_image_disk(phi, D1).radius
    rho2 = mobius_image_disk(phi, D2).radius
    R = math.sqrt(rho1 / rho2)
    phi = MoebiusMap(1.0 / math.sqrt(rho1 * rho2), 0, 0, 1).compose(phi)
    return CanonicalPairConfig(case=PairCase.ANNULUS, mapping=phi, parameter=R)


def _normalize_sector(
    D1: GeneralizedDisk, D2: GeneralizedDisk, avoid: Sequence[complex], tangency_tol: float
) -> CanonicalPairConfig:
    params = _intersection_parameters(D1, D2, tangency_tol)
    chart = disk_chart(D1)
    alpha, beta = (chart_vector(chart, t) for t in params)
    phi = sending(alpha, beta)
    theta1 = mobius_image_disk(phi, D1).theta
    theta2 = mobius_image_disk(phi, D2).theta
    opening = math.remainder(theta2 - theta1, TWO_PI)
    if opening < 0:
        phi = sending(beta, alpha)
        theta1 = mobius_image_disk(phi, D1).theta
        theta2 = mobius_image_disk(phi, D2).theta
        opening = math.remainder(theta2 - theta1, TWO_PI)
    bisector = theta1 + opening / 2.0
    phi = MoebiusMap(cmath.exp(-1j * bisector), 0, 0, 1).compose(phi)
    reference = _avoid_reference(phi, avoid, chart_vector(chart, 0.5 * (params[0] + params[1])))
    log_scale = float(np.mean([math.log(abs(w)) for w in reference]))
    phi = MoebiusMap(math.exp(-log_scale), 0, 0, 1).compose(phi)
    return CanonicalPairConfig(case=PairCase.SECTOR, mapping=phi, parameter=opening / 2.0)


def _normalize_strip(
    D1: GeneralizedDisk, D2: GeneralizedDisk, avoid: Sequence[complex], tangency_tol: float
) -> CanonicalPairConfig:
    (t_alpha,) = _intersection_parameters(D1, D2, tangency_tol)
    chart = disk_chart(D1)
    alpha = chart_vector(chart, t_alpha)
    opposite = chart_vector(chart, t_alpha + math.pi)
    phi = sending(opposite, alpha)
    theta1 = mobius_image_disk(phi, D1).theta
    phi = MoebiusMap(cmath.exp(1j * (-math.pi / 2 - theta1)), 0, 0, 1).compose(phi)
    upper = mobius_image_disk(phi, D1).anchor.imag
    lower = mobius_image_disk(phi, D2).anchor.imag
    scale = 2.0 / (upper - lower)
    shift = 0.5 * (upper + lower)
    phi = MoebiusMap(scale, -1j * scale * shift, 0, 1).compose(phi)
    reference = _avoid_reference(phi, avoid, opposite)
    offset = float(np.mean([w.real for w in reference]))
    phi = MoebiusMap(1, -offset, 0, 1).compose(phi)
    return CanonicalPairConfig(case=PairCase.STRIP, mapping=phi, parameter=None)
