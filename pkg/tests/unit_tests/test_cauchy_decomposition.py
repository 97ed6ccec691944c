import cmath
import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from specsetlab.geometry.sphere_geometry import boundary_point, interior_margin
from specsetlab.geometry.tessellation import build_tessellation
from specsetlab.operators.cauchy_decomposition import (
    annulus_residual,
    decompose,
    empirical_cb_ratio,
    g_poisson,
    g_residual,
    poisson_kernel,
    poisson_kernel_raw,
    pullback_check,
    residual_difference,
    residual_kernel,
    sector_residual,
)
from specsetlab.operators.operator_core import jordan_block, resolvent, spectral_norm
from specsetlab.types import GeneralizedDisk, MoebiusMap
from specsetlab.types.operator_types import KernelKind, RationalFunction
from specsetlab.utils.exceptions import (
    NotOnBoundaryError,
    PointAtInfinityError,
    PoleOnDomainError,
    SpectrumNotInteriorError,
)

ONE = RationalFunction.constant(1.0)
Z = RationalFunction.identity()
SECTOR_MATRIX = np.array([[1.0, 0.2], [0.0, 1.5]], dtype=complex)


def test_poisson_kernel_of_zero_matrix_is_uniform(unit_disk):
    A = np.zeros((1, 1), dtype=complex)
    for t in np.linspace(0.0, 2 * math.pi, 7):
        kernel = poisson_kernel(cmath.exp(1j * t), A, unit_disk)
        assert kernel.kind is KernelKind.POISSON
        assert kernel.value[0, 0] == pytest.approx(1 / (2 * math.pi))


@pytest.mark.parametrize(
    "disk",
    [
        GeneralizedDisk.interior(0.0, 2.0),
        GeneralizedDisk.exterior(0.0, 0.5),
        GeneralizedDisk.half_plane(0.0, -1.0),
    ],
)
def test_poisson_kernel_is_hermitian_and_positive_for_spectral_disks(disk, jordan_matrix):
    for s in (-2.0, 0.4, 1.7, 3.0):
        sigma, _ = boundary_point(disk, s)
        mu = poisson_kernel(sigma, jordan_matrix, disk).value
        assert np.allclose(mu, mu.conj().T, atol=1e-12)
        assert np.linalg.eigvalsh(mu).min() >= -1e-12


def test_poisson_kernel_is_indefinite_for_non_spectral_disk(jordan_matrix):
    D = GeneralizedDisk.interior(0.0, 1.9)
    mu = poisson_kernel(1.9j, jordan_matrix, D).value
    assert np.linalg.eigvalsh(mu).min() < 0


def test_factored_and_raw_poisson_kernels_agree(jordan_matrix):
    D = GeneralizedDisk.interior(0.5j, 2.5)
    for t in (0.3, 2.2, 4.4):
        u = cmath.exp(1j * t)
        sigma = D.center + D.radius * u
        raw = poisson_kernel_raw(sigma, 1j * u, jordan_matrix, D)
        assert np.allclose(raw, poisson_kernel(sigma, jordan_matrix, D).value, atol=1e-10)


@pytest.mark.parametrize(
    "disk, sigma, tangent",
    [
        (GeneralizedDisk.interior(0.0, 2.0), 2.0 * cmath.exp(0.7j), 1j * cmath.exp(0.7j)),
        (GeneralizedDisk.exterior(0.0, 0.5), 0.5 * cmath.exp(0.7j), -1j * cmath.exp(0.7j)),
        (GeneralizedDisk.half_plane(0.0, -1.0), -1.0 + 0.3j, -1j),
    ],
)
def test_cauchy_kernel_split(disk, sigma, tangent, jordan_matrix):
    # mu ds + nu dsigma reproduces the Cauchy kernel on the boundary
    mu = poisson_kernel(sigma, jordan_matrix, disk).value
    nu = residual_kernel(sigma, jordan_matrix, disk).value
    cauchy = resolvent(jordan_matrix, sigma) * tangent / (2j * math.pi)
    assert np.allclose(mu + nu * tangent, cauchy, atol=1e-10)


def test_kernel_preconditions(unit_disk, jordan_matrix):
    with pytest.raises(NotOnBoundaryError):
        poisson_kernel(0.5, np.zeros((1, 1)), unit_disk)
    with pytest.raises(SpectrumNotInteriorError):
        poisson_kernel(-1.0, jordan_matrix, unit_disk)
    with pytest.raises(PointAtInfinityError):
        residual_kernel(complex("inf"), jordan_matrix, unit_disk)


def test_poisson_part_of_constant_is_identity(jordan_matrix):
    tess = build_tessellation([GeneralizedDisk.interior(0.0, 2.0)])
    gp, panels = g_poisson(ONE, jordan_matrix, tess, tol=1e-11)
    assert np.allclose(gp, np.eye(2), atol=1e-9)
    assert panels > 0


def test_decompose_single_disk_zero_matrix(unit_disk):
    report = decompose(ONE, np.zeros((1, 1)), [unit_disk], tol=1e-11)
    assert report.defect < 1e-9
    assert report.sup_norm == pytest.approx(1.0)
    assert report.bound == pytest.approx(1.0)
    assert not report.g_residual.any()


def test_decompose_annulus(annulus_instance):
    f = RationalFunction((1.0,), (-3.0, 1.0)) + Z
    report = decompose(f, annulus_instance.matrix, annulus_instance.disks, tol=1e-11)
    assert report.defect < 1e-7
    assert report.epsilon == 0.0
    assert report.bound == pytest.approx(2 + 2 / math.sqrt(3))
    assert report.norm_fA <= report.bound * report.sup_norm


def test_decompose_lens_and_three_disks(lens_disks, three_disks, small_matrix):
    f = RationalFunction((1.0, 0.5, 0.25))
    assert decompose(f, small_matrix, lens_disks, tol=1e-11).defect < 1e-7
    A = np.array([[0.5, 0.1], [0.0, 0.4 - 0.1j]], dtype=complex)
    assert decompose(f, A, three_disks, tol=1e-11).defect < 1e-7


def test_decompose_enlarges_touching_disks(annulus_instance):
    report = decompose(
        Z, annulus_instance.matrix, annulus_instance.disks, tol=1e-10, touch_margin=0.6
    )
    assert report.epsilon == pytest.approx(2e-6)
    assert report.defect < 1e-7


def test_decompose_rejects_pole_in_domain(lens_disks, small_matrix):
    with pytest.raises(PoleOnDomainError):
        decompose(RationalFunction((1.0,), (0.0, 1.0)), small_matrix, lens_disks)


def test_residual_difference_is_moebius_invariant(lens_disks, small_matrix):
    phi = MoebiusMap(2.0, 1.0 + 0.5j, 0.0, 1.0)
    for z in (0.1j, -0.2 + 0.3j, 0.35):
        assert pullback_check(phi, z, small_matrix, *lens_disks) < 1e-10


def test_residual_difference_is_invariant_under_inversion(
    annulus_disks, jordan_matrix, lens_disks, small_matrix
):
    inversion = MoebiusMap(0.0, 1.0, 1.0, 0.0)
    for z in (1.2, -0.8j, 0.7 + 0.7j):
        assert pullback_check(inversion, z, jordan_matrix, *annulus_disks) < 1e-9
    shifted = MoebiusMap(0.0, 1.0, 1.0, -2.0)
    for z in (0.1j, -0.2 + 0.3j, 0.35):
        assert pullback_check(shifted, z, small_matrix, *lens_disks) < 1e-9


LENS = (GeneralizedDisk.interior(-0.6, 1.0), GeneralizedDisk.interior(0.6, 1.0))
LENS_MATRIX = np.array([[0.2, 0.1j], [0.0, -0.3]], dtype=complex)
coefficients = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=100, deadline=None)
@given(
    a=coefficients,
    b=coefficients,
    c=coefficients,
    d=coefficients,
    radius=st.floats(min_value=0.0, max_value=0.3),
    angle=st.floats(min_value=0.0, max_value=2 * math.pi),
)
def test_residual_difference_is_invariant_under_random_maps(a, b, c, d, radius, angle):
    assume(abs(a * d - b * c) > 0.25)
    phi = MoebiusMap(a, b, c, d)
    if abs(phi.c) > 1e-9:
        margins = [interior_margin(D, phi.pole) for D in LENS]
        assume(min(margins) < -0.2 and min(abs(m) for m in margins) > 0.2)
    z = radius * cmath.exp(1j * angle)
    scale = max(1.0, spectral_norm(residual_difference(z, LENS_MATRIX, *LENS)))
    assert pullback_check(phi, z, LENS_MATRIX, *LENS) < 1e-8 * scale


def test_empirical_cb_ratio(annulus_instance):
    ratio = empirical_cb_ratio(Z, annulus_instance.matrix, annulus_instance.disks)
    assert ratio == pytest.approx(1.0, rel=1e-6)


def test_annulus_residual_matches_median_integral(annulus_disks, jordan_matrix):
    f = RationalFunction((1.0,), (-3.0, 1.0)) + Z * Z
    gr, _ = g_residual(f, jordan_matrix, build_tessellation(annulus_disks), tol=1e-11)
    closed = annulus_residual(f, jordan_matrix, 2.0, tol=1e-11)
    assert np.allclose(gr, closed, atol=1e-8)


def test_sector_residual_matches_median_integral(sector_disks):
    f = RationalFunction((1.0,), (1.0, 1.0))
    gr, _ = g_residual(f, SECTOR_MATRIX, build_tessellation(sector_disks), tol=1e-11)
    closed = sector_residual(f, SECTOR_MATRIX, math.pi / 3, tol=1e-11)
    assert np.allclose(gr, closed, atol=1e-8)


def _rechart(arc, a: complex):
    """The same arc through ``chart o B``, ``B`` the unit disk automorphism sending ``a`` to 0."""
    B = MoebiusMap(1.0, -a, -a.conjugate(), 1.0)
    back = B.inverse()
    start = cmath.phase(back.apply(cmath.exp(1j * arc.t_start)))
    if arc.is_closed:
        end = start + 2 * math.pi
    else:
        end = start + (cmath.phase(back.apply(cmath.exp(1j * arc.t_end))) - start) % (2 * math.pi)
    return replace(arc, chart=arc.chart.compose(B), t_start=start, t_end=end)


@pytest.mark.parametrize("a", [0.3 + 0j, -0.2 + 0.5j])
def test_g_residual_does_not_depend_on_the_chart(annulus_disks, sector_disks, three_disks, a):
    cases = [
        (RationalFunction((1.0,), (-3.0, 1.0)), jordan_block(1.5), annulus_disks),
        (RationalFunction((1.0,), (1.0, 1.0)), SECTOR_MATRIX, sector_disks),
        (
            RationalFunction((1.0, 0.5, 0.25)),
            np.array([[0.5, 0.1], [0.0, 0.4 - 0.1j]], dtype=complex),
            three_disks,
        ),
    ]
    for f, A, disks in cases:
        tess = build_tessellation(disks)
        recharted = replace(
            tess,
            median_arcs=tuple(
                replace(piece, arc=_rechart(piece.arc, a)) for piece in tess.median_arcs
            ),
        )
        for piece, moved in zip(tess.median_arcs, recharted.median_arcs):
            assert moved.arc.parameter_of(piece.arc.midpoint(), tol=1e-9) is not None
        expected, _ = g_residual(f, A, tess, tol=1e-11)
        actual, _ = g_residual(f, A, recharted, tol=1e-11)
        assert np.allclose(actual, expected, atol=1e-8)
