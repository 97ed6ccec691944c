import math

import numpy as np
import pytest

from specsetlab.geometry.sphere_geometry import (
    caratheodory_distance,
    distance_profile,
    interior_margin,
    mobius_image_disk,
)
from specsetlab.geometry.tessellation import (
    boundary_arcs,
    build_tessellation,
    cell_of,
    drop_redundant_disks,
    in_domain,
    integration_paths,
)
from specsetlab.operators.quadrature import Measure, integrate_kernel
from specsetlab.types import GeneralizedDisk, MoebiusMap, RationalFunction
from specsetlab.utils.exceptions import (
    DuplicateDiskError,
    EmptyInteriorError,
    InvalidValue,
    NestedDisksError,
    PointOutsideDiskError,
)

UNIT = GeneralizedDisk.interior(0.0, 1.0)


def test_single_disk(unit_disk):
    tess = build_tessellation([unit_disk])
    assert tess.size == 1
    assert len(tess.boundary_arcs) == 1
    assert tess.boundary_arcs[0].arc.is_closed
    assert tess.median_arcs == ()
    assert tess.cells[0].boundary_arcs == (0,)


def test_annulus_median_is_closed_unit_circle(annulus_disks):
    tess = build_tessellation(annulus_disks)
    assert len(tess.boundary_arcs) == 2
    assert all(piece.arc.is_closed for piece in tess.boundary_arcs)
    (median,) = tess.median_arcs
    assert (median.j, median.k) == (0, 1)
    assert median.arc.is_closed
    for t in median.arc.sample(5):
        assert abs(median.arc.point(t)) == pytest.approx(1.0)
    assert tess.vertices == ()


def test_annulus_median_runs_counterclockwise(annulus_disks):
    # X_0 (the outer part) lies to the right of the arc
    (median,) = build_tessellation(annulus_disks).median_arcs
    t = median.arc.sample(1)[0]
    z = median.arc.point(t)
    right = z - 1e-3 * 1j * median.arc.tangent(t)
    assert abs(right) > abs(z)


def test_lens_median_is_proper_segment(lens_disks):
    tess = build_tessellation(lens_disks)
    assert len(tess.boundary_arcs) == 2
    (median,) = tess.median_arcs
    assert not median.arc.is_closed
    assert len(tess.vertices) == 2
    assert tess.vertices[0] == pytest.approx(-0.8j, abs=1e-9)
    assert tess.vertices[1] == pytest.approx(0.8j, abs=1e-9)
    assert abs(median.arc.midpoint().real) < 1e-9


def test_sector_pieces_are_rays(sector_disks):
    tess = build_tessellation(sector_disks)
    for piece in tess.boundary_arcs:
        assert piece.arc.span == pytest.approx(math.pi)
    (median,) = tess.median_arcs
    assert median.arc.midpoint().real > 0
    assert abs(median.arc.midpoint().imag) < 1e-9
    assert abs(tess.vertices[0]) < 1e-9


def test_strip_median_is_real_axis(strip_disks):
    tess = build_tessellation(strip_disks)
    (median,) = integration_paths(tess)
    assert median.arc.is_closed
    assert median.arc.carrier.is_line
    assert median.arc.carrier.residual(3.0) == pytest.approx(0.0, abs=1e-12)


def test_three_disk_layout_structure(three_disks):
    tess = build_tessellation(three_disks)
    assert len(tess.cells) == 3
    assert all(cell.boundary_arcs for cell in tess.cells)
    for piece in tess.boundary_arcs:
        z = piece.arc.midpoint()
        assert abs(interior_margin(tess.disks[piece.index], z)) < 1e-9
        assert in_domain(tess.disks, z, 1e-9)
    for piece in tess.median_arcs:
        z = piece.arc.midpoint()
        distances = [caratheodory_distance(z, D) for D in tess.disks]
        assert distances[piece.j] == pytest.approx(distances[piece.k], abs=1e-9)
        assert min(distances) >= distances[piece.j] - 1e-9


def test_boundary_arcs_cover_only_points_of_x(lens_disks):
    for piece in boundary_arcs(lens_disks):
        for t in piece.arc.sample(16):
            assert in_domain(lens_disks, piece.arc.point(t), 1e-9)


def test_cell_of(annulus_disks):
    tess = build_tessellation(annulus_disks)
    assert cell_of(tess, 1.5) == (0,)
    assert cell_of(tess, 0.6j) == (1,)
    assert cell_of(tess, -1.0) == (0, 1)
    with pytest.raises(PointOutsideDiskError):
        cell_of(tess, 3.0)


def test_cells_reference_their_arcs(lens_disks):
    tess = build_tessellation(lens_disks)
    for cell in tess.cells:
        assert all(tess.boundary_arcs[i].index == cell.index for i in cell.boundary_arcs)
        assert cell.median_arcs == (0,)


def test_degenerate_families():
    with pytest.raises(InvalidValue):
        build_tessellation([])
    with pytest.raises(NestedDisksError) as excinfo:
        build_tessellation([UNIT, GeneralizedDisk.interior(0.0, 2.0)])
    assert "disk 0 is contained in disk 1" in str(excinfo.value)
    with pytest.raises(DuplicateDiskError):
        build_tessellation([UNIT, GeneralizedDisk.interior(0.0, 1.0)])
    with pytest.raises(EmptyInteriorError):
        build_tessellation([UNIT, GeneralizedDisk.interior(3.0, 1.0)])


def test_drop_redundant_disks():
    family = [UNIT, GeneralizedDisk.interior(0.0, 2.0), GeneralizedDisk.interior(0.0, 1.0)]
    assert drop_redundant_disks(family) == (UNIT,)
    tess = build_tessellation(family, drop_redundant=True)
    assert tess.disks == (UNIT,)


def test_asdict_layout(lens_disks):
    data = build_tessellation(lens_disks).asdict()
    assert sorted(data) == ["arcs", "boundary", "cells", "disks", "vertices"]
    assert data["arcs"][0]["j"] == 0 and data["arcs"][0]["k"] == 1
    assert data["cells"][1] == {"j": 1, "boundary_arcs": [1], "median_arcs": [0]}
    assert np.allclose(data["vertices"], [[0.0, -0.8], [0.0, 0.8]], atol=1e-9)


ONE = np.ones((1, 1))
# (family fixture, point outside X)
FAMILIES = [
    ("annulus_disks", 3.0),
    ("lens_disks", 2.0),
    ("sector_disks", -1.0),
    ("strip_disks", 3j),
    ("three_disks", 3.0),
]


def _line_integral(F, arc) -> complex:
    result = integrate_kernel(F, arc, lambda sigma: ONE, Measure.COMPLEX, tol=1e-10)
    return complex(result.value[0, 0])


def _cell_boundary_integral(tess, j, F) -> complex:
    """Integral of ``F dz`` over the positively oriented boundary of the cell ``X_j``."""
    total = sum(_line_integral(F, piece.arc) for piece in tess.boundary_arcs if piece.index == j)
    for piece in tess.median_arcs:
        if piece.j == j:
            total -= _line_integral(F, piece.arc)
        elif piece.k == j:
            total += _line_integral(F, piece.arc)
    return total


@pytest.mark.parametrize("family, outside", FAMILIES)
def test_median_arcs_replace_boundary_paths(request, family, outside):
    # 1/(z - w)^2 is analytic on X including infinity
    tess = build_tessellation(request.getfixturevalue(family))
    F = RationalFunction((1.0,), (outside * outside, -2.0 * outside, 1.0))
    for j in range(tess.size):
        along_boundary = sum(
            _line_integral(F, piece.arc) for piece in tess.boundary_arcs if piece.index == j
        )
        along_medians = sum(
            _line_integral(F, piece.arc) for piece in tess.median_arcs if piece.j == j
        ) - sum(_line_integral(F, piece.arc) for piece in tess.median_arcs if piece.k == j)
        assert abs(along_boundary - along_medians) < 1e-8


@pytest.mark.parametrize("family, outside", FAMILIES)
def test_cells_cover_x(request, family, outside):
    tess = build_tessellation(request.getfixturevalue(family))
    rng = np.random.default_rng(3)
    points = []
    for z in rng.uniform(-2.0, 2.0, 400) + 1j * rng.uniform(-2.0, 2.0, 400):
        if min(interior_margin(D, z) for D in tess.disks) < 0.05:
            continue
        profile = np.sort(distance_profile(tess.disks, z))
        if profile[1] - profile[0] > 0.05:
            points.append(complex(z))
    assert len(points) >= 5
    for z in points[:5]:
        # dz/(s - z) - dz/(s - w) decays at infinity and winds once around z inside X_j
        F = RationalFunction((z - outside,), (z * outside, -(z + outside), 1.0))
        windings = [_cell_boundary_integral(tess, j, F) / (2j * math.pi) for j in range(tess.size)]
        assert np.allclose(windings, np.round(np.real(windings)), atol=1e-6)
        inside = [j for j, w in enumerate(windings) if abs(w - 1.0) < 1e-6]
        assert inside == list(cell_of(tess, z))
        assert sum(windings) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("family", ["annulus_disks", "lens_disks", "sector_disks", "three_disks"])
def test_median_arcs_are_moebius_equivariant(request, family):
    disks = request.getfixturevalue(family)
    phi = MoebiusMap(1.0, 0.3, 0.2, 1.0)
    assert not in_domain(disks, phi.pole)
    tess = build_tessellation(disks)
    image = build_tessellation([mobius_image_disk(phi, D) for D in disks])
    assert len(tess.median_arcs) >= 1
    for piece in tess.median_arcs:
        for t in piece.arc.sample(12):
            w = phi.apply(piece.arc.point(t))
            assert any(
                (other.j, other.k) == (piece.j, piece.k)
                and other.arc.parameter_of(w, tol=1e-7) is not None
                for other in image.median_arcs
            )
