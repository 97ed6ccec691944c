"""
Tessellation of ``X = D_0 & ... & D_{n-1}`` into the cells
``X_j = {z in X : d(z, D_j) = min_k d(z, D_k)}`` of the Caratheodory distance.

Every piece of the construction is a section of a circline: the boundary of a disk or a
median circline ``{d(., D_j) = d(., D_k)}``. Sections are computed from the exact zeros of the
restricted Hermitian forms (:func:`circline_sections`), so arc endpoints are the analytic
intersection points and only whole sub-arcs are classified by sampling.
"""

from typing import Sequence

import numpy as np

from specsetlab.geometry.sphere_geometry import (
    ABS_TOL,
    TANGENCY_TOL,
    circline_chart,
    circline_sections,
    classify_pair,
    disk_chart,
    distance_profile,
    disk_contains,
    is_subset,
    median_form,
)
from specsetlab.types.geometry_types import Circline, GeneralizedDisk, OrientedArc, is_infinite
from specsetlab.types.geometry_types import PairRelation
from specsetlab.types.tessellation_types import (
    BoundaryArc,
    CellDescriptor,
    MedianArc,
    Tessellation,
)
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import (
    DuplicateDiskError,
    EmptyInteriorError,
    InvalidValue,
    NestedDisksError,
    PointOutsideDiskError,
)

logger = get_logger(__name__, "warning")

TIE_TOL = 1e-9
_MIN_SPAN = 1e-12


def _same_disk(Dj: GeneralizedDisk, Dk: GeneralizedDisk) -> bool:
    return bool(np.allclose(Dj.hermitian(), Dk.hermitian(), atol=1e-12, rtol=0))


def drop_redundant_disks(
    disks: Sequence[GeneralizedDisk], tangency_tol: float = TANGENCY_TOL
) -> tuple[GeneralizedDisk, ...]:
    """
    Remove every disk that contains another one of the family; duplicates keep their first copy.

    The intersection is unchanged since a superset adds no constraint.
    """
    kept = list(disks)
    changed = True
    while changed:
        changed = False
        for j, Dj in enumerate(kept):
            for k, Dk in enumerate(kept):
                if j != k and is_subset(Dj, Dk, tangency_tol):
                    logger.info(f"dropping redundant disk {Dk!r} (contains {Dj!r})")
                    del kept[k]
                    changed = True
                    break
            if changed:
                break
    return tuple(kept)


def check_family(disks: Sequence[GeneralizedDisk], tangency_tol: float = TANGENCY_TOL) -> None:
    """
    Reject families the tessellation is not defined for.

    Raises:
        DuplicateDiskError: Two equal disks.
        NestedDisksError: One disk contained in another.
        EmptyInteriorError: Two disks meeting in boundary points only.
    """
    for j in range(len(disks)):
        for k in range(j + 1, len(disks)):
            if _same_disk(disks[j], disks[k]):
                raise DuplicateDiskError(j, k)
            match classify_pair(disks[j], disks[k], tangency_tol):
                case PairRelation.NESTED:
                    if is_subset(disks[j], disks[k], tangency_tol):
                        raise NestedDisksError(j, k)
                    raise NestedDisksError(k, j)
                case PairRelation.DISJOINT | PairRelation.TANGENT_OUTSIDE | PairRelation.IDENTICAL:
                    raise EmptyInteriorError(f"disks {j} and {k} have no common interior point")


def boundary_arcs(
    disks: Sequence[GeneralizedDisk], abs_tol: float = ABS_TOL
) -> tuple[BoundaryArc, ...]:
    """Pieces of ``boundary(D_j) & X``, each oriented with ``D_j`` (and ``X``) on the left."""
    forms = [D.hermitian() for D in disks]
    pieces = []
    for j, D in enumerate(disks):
        chart = disk_chart(D)
        others = [forms[m] for m in range(len(disks)) if m != j]
        for t0, t1 in circline_sections(chart, others, abs_tol):
            if t1 - t0 > _MIN_SPAN:
                pieces.append(BoundaryArc(j, OrientedArc(D.boundary, chart, t0, t1)))
    return tuple(pieces)


def median_arcs(
    disks: Sequence[GeneralizedDisk], abs_tol: float = ABS_TOL
) -> tuple[MedianArc, ...]:
    """
    Pieces of the median circlines ``C_jk`` inside ``X_j & X_k``, ``j < k``.

    On ``C_jk`` the forms of ``D_j`` and ``D_k`` agree, so the piece is cut out by
    ``H_j <= 0`` (membership in ``X``) and ``H_m - H_j <= 0`` (``D_j`` no farther than ``D_m``).
    """
    forms = [D.hermitian() for D in disks]
    pieces = []
    for j in range(len(disks)):
        for k in range(j + 1, len(disks)):
            form = median_form(disks[j], disks[k])
            chart = circline_chart(form)
            carrier = Circline.from_hermitian(form)
            conditions = [forms[j]]
            for m in range(len(disks)):
                if m not in (j, k):
                    conditions.extend((forms[m], forms[m] - forms[j]))
            for t0, t1 in circline_sections(chart, conditions, abs_tol):
                if t1 - t0 > _MIN_SPAN:
                    pieces.append(MedianArc(j, k, OrientedArc(carrier, chart, t0, t1)))
    return tuple(pieces)


def _vertices(arcs: Sequence[MedianArc], tol: float = 1e-9) -> tuple[complex, ...]:
    found: list[complex] = []
    for piece in arcs:
        if piece.arc.is_closed:
            continue
        for z in (piece.arc.start, piece.arc.end):
            if is_infinite(z):
                continue
            if all(abs(z - w) > tol * max(1.0, abs(z)) for w in found):
                found.append(z)
    return tuple(sorted(found, key=lambda z: (round(z.real, 9), round(z.imag, 9))))


def build_tessellation(
    disks: Sequence[GeneralizedDisk],
    drop_redundant: bool = False,
    abs_tol: float = ABS_TOL,
    tangency_tol: float = TANGENCY_TOL,
) -> Tessellation:
    """
    Build cells, boundary arcs and median arcs of the intersection of ``disks``.

    Args:
        disks (Sequence[GeneralizedDisk]): The family; pairwise non-nested unless
            ``drop_redundant`` is set.
        drop_redundant (bool): Drop disks containing another one instead of raising.
        abs_tol (float): Tolerance of the sign tests on restricted forms.
        tangency_tol (float): Tolerance for tangent pairs.

    Returns:
        Tessellation: The tessellation; with one disk there are no median arcs.

    Raises:
        InvalidValue: For an empty family.
        NestedDisksError, DuplicateDiskError: For redundant disks.
        EmptyInteriorError: If ``X`` has empty interior.
    """
    if not disks:
        raise InvalidValue("disks", disks, "at least one disk is required")
    disks = tuple(disks)
    if drop_redundant:
        disks = drop_redundant_disks(disks, tangency_tol)
    check_family(disks, tangency_tol)

    boundary = boundary_arcs(disks, abs_tol)
    if not boundary:
        raise EmptyInteriorError()
    medians = median_arcs(disks, abs_tol)
    cells = tuple(
        CellDescriptor(
            index=j,
            boundary_arcs=tuple(i for i, piece in enumerate(boundary) if piece.index == j),
            median_arcs=tuple(i for i, piece in enumerate(medians) if j in (piece.j, piece.k)),
        )
        for j in range(len(disks))
    )
    logger.debug(
        f"tessellation of {len(disks)} disks: {len(boundary)} boundary arcs, "
        f"{len(medians)} median arcs"
    )
    return Tessellation(
        disks=disks,
        boundary_arcs=boundary,
        median_arcs=medians,
        cells=cells,
        vertices=_vertices(medians),
    )


def in_domain(disks: Sequence[GeneralizedDisk], z: complex, tol: float = ABS_TOL) -> bool:
    return all(disk_contains(D, z, tol) for D in disks)


def cell_of(tess: Tessellation, z: complex, tie_tol: float = TIE_TOL) -> tuple[int, ...]:
    """
    Indices ``j`` minimizing ``d(z, D_j)``; several when they tie within ``tie_tol``.

    Raises:
        PointOutsideDiskError: If ``z`` is not in ``X``.
    """
    if not in_domain(tess.disks, z, 1e-10):
        raise PointOutsideDiskError(z, "X")
    profile = distance_profile(tess.disks, z)
    best = float(np.min(profile))
    return tuple(int(j) for j in np.nonzero(profile <= best + tie_tol)[0])


def integration_paths(tess: Tessellation) -> tuple[MedianArc, ...]:
    """
    Median arcs replacing the paths ``X & boundary(D_j)`` for the residual part.

    Arc ``(j, k)`` serves ``D_j`` in its stored orientation and ``D_k`` reversed.
    """
    return tess.median_arcs
