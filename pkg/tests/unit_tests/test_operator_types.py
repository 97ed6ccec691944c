import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from specsetlab.types import GeneralizedDisk, MoebiusMap
from specsetlab.types.geometry_types import is_infinite
from specsetlab.types.operator_types import (
    DecompositionReport,
    ProblemInstance,
    RationalFunction,
    RationalMatrixFunction,
    as_block,
    check_matrix,
)
from specsetlab.utils.exceptions import InvalidRationalFunctionError, MatrixShapeError

Z = RationalFunction.identity()
INV = RationalFunction((1.0,), (0.0, 1.0))


def test_denominator_is_made_monic():
    f = RationalFunction((2.0, 4.0), (2.0,))
    assert f.den == (1.0,)
    assert f.num == (1.0, 2.0)


def test_common_roots_cancel():
    f = RationalFunction((-1.0, 0.0, 1.0), (-1.0, 1.0))
    assert f.degree_den == 0
    assert np.allclose(f.num, (1.0, 1.0))
    assert RationalFunction((-1.0, 1.0), (-1.0, 1.0)).num == pytest.approx((1.0,))


def test_zero_function():
    f = RationalFunction((0.0,), (-1.0, 1.0))
    assert f.den == (1.0,)
    assert f(3.0) == 0
    assert f.degree_num == 0


def test_invalid_coefficients():
    with pytest.raises(InvalidRationalFunctionError):
        RationalFunction((1.0,), (0.0,))
    with pytest.raises(InvalidRationalFunctionError):
        RationalFunction(())
    with pytest.raises(InvalidRationalFunctionError):
        RationalFunction((np.nan,))


def test_behaviour_at_infinity():
    assert is_infinite(Z.value_at_infinity)
    assert not Z.is_bounded_at_infinity
    assert INV.value_at_infinity == 0
    assert RationalFunction((1.0, 3.0), (2.0, 1.0)).value_at_infinity == 3.0
    assert INV(1e3) == pytest.approx(1e-3)


def test_evaluation_at_pole():
    assert is_infinite(INV(0.0))


def test_from_poles():
    f = RationalFunction.from_poles(1.0, [2.0], [0.5])
    assert f.poles() == pytest.approx([0.5])
    assert f(1.5) == pytest.approx(3.0)
    assert f.value_at_infinity == pytest.approx(1.0)


def test_arithmetic():
    f = Z * Z + 1
    assert f(2j) == pytest.approx(-3.0)
    g = 2 * INV
    assert g(4.0) == pytest.approx(0.5)
    assert (f + g)(1.0) == pytest.approx(4.0)


def test_derivative():
    assert (Z * Z).derivative()(3.0) == pytest.approx(6.0)
    assert INV.derivative()(2.0) == pytest.approx(-0.25)


def test_compose_mobius():
    shift = MoebiusMap(1, 1, 0, 1)
    assert (Z * Z).compose_mobius(shift)(2.0) == pytest.approx(9.0)
    inversion = MoebiusMap(0, 1, -1, 0)
    # (1/z) o (-1/z) = -z
    assert INV.compose_mobius(inversion)(0.5 + 1j) == pytest.approx(-(0.5 + 1j))


@given(
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    st.complex_numbers(min_magnitude=0.1, max_magnitude=10),
)
def test_evaluation_matches_definition(pole, z):
    f = RationalFunction.from_poles(0.5, [1.0 + 1j], [pole])
    if abs(z - pole) < 1e-3:
        return
    assert f(z) == pytest.approx(0.5 + (1.0 + 1j) / (z - pole), rel=1e-8, abs=1e-8)


def test_block_functions():
    F = RationalMatrixFunction(((Z, INV), (RationalFunction.constant(0), Z)))
    assert F.size == 2
    assert not F.is_scalar
    assert np.allclose(F(2.0), [[2.0, 0.5], [0.0, 2.0]])
    assert F.poles() == pytest.approx([0.0])
    square = F * F
    assert np.allclose(square(2.0), F(2.0) @ F(2.0))
    assert as_block(Z).is_scalar
    assert as_block(F) is F
    with pytest.raises(InvalidRationalFunctionError):
        RationalMatrixFunction(((Z, Z),))


def test_check_matrix():
    assert check_matrix([[1, 2], [3, 4]]).dtype == complex
    with pytest.raises(MatrixShapeError):
        check_matrix([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(MatrixShapeError):
        check_matrix([[np.inf]])


def test_problem_instance(annulus_instance):
    assert annulus_instance.n_dim == 2
    assert annulus_instance.function.is_scalar
    data = annulus_instance.asdict()
    assert data["matrix"]["n"] == 2
    assert data["disks"][1]["kind"] == "exterior"
    assert data["kind"] == "annulus"


def test_problem_instance_rejects_bad_matrix():
    with pytest.raises(MatrixShapeError):
        ProblemInstance(matrix=np.zeros((2, 3)), disks=(GeneralizedDisk.interior(0, 1),), function=Z)


def test_decomposition_report_norms():
    report = DecompositionReport(
        g_poisson=np.diag([3.0, 1.0]),
        g_residual=np.zeros((2, 2)),
        f_direct=np.diag([3.0, 1.0]),
        defect=0.0,
        sup_norm=3.0,
        bound=6.0,
        panels=4,
    )
    assert report.norm_gp == pytest.approx(3.0)
    assert report.norm_gr == 0.0
    assert report.asdict()["norm_fA"] == pytest.approx(3.0)
