import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from specsetlab.bounds import (
    crossover,
    gamma,
    gamma_1,
    gamma_estimate,
    gamma_k,
    h_annulus,
    h_sector,
    paulsen_bound,
    paulsen_crossovers,
    paulsen_psi,
    shields_bound,
    thm0_bound,
    thm1_upper,
)
from specsetlab.bounds.bounds import h_annulus_quadrature, h_sector_quadrature, psi_lower
from specsetlab.utils.exceptions import (
    InvalidAngleError,
    InvalidRadiusError,
    InvalidValue,
    NoCrossoverError,
)

mpmath.mp.dps = 30


def test_thm0_bound():
    assert thm0_bound(1) == 1.0
    assert thm0_bound(2) == pytest.approx(2 + 2 / math.sqrt(3))
    assert thm0_bound(3) == pytest.approx(3 + 2 * math.sqrt(3))
    with pytest.raises(InvalidValue, match="need at least one disk"):
        thm0_bound(0)


def test_thm1_upper():
    assert thm1_upper(1.0) == pytest.approx(2 + 2 / math.sqrt(3))
    assert thm1_upper(2.0) == pytest.approx(2 + 3 / math.sqrt(7))
    assert thm1_upper(2.0) == pytest.approx(3.1338934190, abs=1e-10)
    assert thm1_upper(1e6) == pytest.approx(3.0, abs=1e-5)
    with pytest.raises(InvalidRadiusError):
        thm1_upper(0.5)


@given(st.floats(min_value=1.0, max_value=1e3), st.floats(min_value=1e-3, max_value=10.0))
def test_thm1_upper_is_decreasing(R, step):
    assert thm1_upper(R + step) <= thm1_upper(R)


def test_shields_bound():
    assert shields_bound(math.sqrt(3)) == pytest.approx(2 + math.sqrt(2))
    assert shields_bound(10.0) == pytest.approx(2 + math.sqrt(101 / 99))
    assert shields_bound(1.0 + 1e-9) > 1e3
    with pytest.raises(InvalidRadiusError):
        shields_bound(1.0)


def test_h_annulus():
    assert h_annulus(2.0) == pytest.approx(3 / math.sqrt(7))
    assert h_annulus(1.0) == pytest.approx(2 / math.sqrt(3))


@pytest.mark.parametrize("R, phase", [(1.1, 0.0), (2.0, 0.0), (2.0, 1.3), (7.5, 2.0)])
def test_h_annulus_quadrature(R, phase):
    assert h_annulus_quadrature(R, phase) == pytest.approx(h_annulus(R), rel=1e-10)


def test_h_sector_values():
    assert h_sector(math.pi / 2) == pytest.approx(2 / math.sqrt(3))
    assert h_sector(math.pi / 4) == pytest.approx(1 / math.sqrt(2))
    assert h_sector(math.pi / 3) == pytest.approx(0.8523, abs=1e-4)


@pytest.mark.parametrize("theta", [0.05, 0.3, math.pi / 6, 0.6, math.pi / 4, 1.2, math.pi / 2])
def test_h_sector_matches_quadrature(theta):
    assert h_sector(theta) == pytest.approx(h_sector_quadrature(theta), rel=1e-7)


def test_h_sector_is_continuous_through_degenerate_angle():
    left, right = h_sector(math.pi / 6 - 1e-7), h_sector(math.pi / 6 + 1e-7)
    assert left == pytest.approx(right, rel=1e-5)
    assert h_sector(math.pi / 6) == pytest.approx(left, rel=1e-5)


@pytest.mark.parametrize("theta", [0.0, -0.1, math.pi / 2 + 1e-6, math.nan])
def test_h_sector_rejects_angles(theta):
    with pytest.raises(InvalidAngleError):
        h_sector(theta)


def test_gamma_1():
    assert gamma_1(1.0) == pytest.approx(4 / 3)
    assert gamma_1(100.0) == pytest.approx(2.0, abs=1e-3)
    assert gamma_1(2.0) == pytest.approx(psi_lower(4.0))


def test_gamma_k_partial_products():
    values = [gamma_k(1.5, k) for k in (1, 2, 5, 20)]
    assert values == sorted(values)
    assert all(v <= 2.0 for v in values)
    with pytest.raises(InvalidValue, match="must be positive"):
        gamma_k(1.5, 0)


def mp_gamma(R, terms=400):
    R = mpmath.mpf(R)
    x = R**-4
    value = 2 / (1 + R**-2)
    for n in range(1, terms + 1):
        value *= (1 - x ** (2 * n)) ** 2 / ((1 - x ** (2 * n - 1)) * (1 - x ** (2 * n + 1)))
    return value


@pytest.mark.parametrize("R", [1.5, 2.0, 4.0])
def test_gamma_against_high_precision_product(R):
    assert gamma(R) == pytest.approx(float(mp_gamma(R)), rel=1e-12)
    estimate = gamma_estimate(R)
    assert estimate.converged
    assert estimate.lower == estimate.upper == estimate.value


def test_gamma_near_one_approaches_wallis_limit():
    assert gamma(1.0001) == pytest.approx(math.pi / 2, abs=1e-3)
    truncated = gamma_estimate(1.0001, max_terms=10)
    assert not truncated.converged
    assert truncated.upper == 2.0
    assert sorted(truncated.asdict()) == ["converged", "lower", "terms", "upper", "value"]


def test_paulsen_psi():
    R = 2.0
    reference = mpmath.nsum(lambda n: 4 / (1 + mpmath.mpf(R) ** (2 * n)), [1, mpmath.inf])
    assert paulsen_psi(R) == pytest.approx(float(reference), rel=1e-14)
    assert paulsen_bound(50.0) == 3.0
    assert paulsen_bound(1.5) == pytest.approx(2 + paulsen_psi(1.5))


def test_crossover():
    assert crossover(lambda R: R - 2, lambda R: 0.0, (1.0, 3.0)) == pytest.approx(2.0, abs=1e-8)
    with pytest.raises(NoCrossoverError):
        crossover(lambda R: R - 2, lambda R: 0.0, (3.0, 4.0))


def test_paulsen_crossovers():
    points = paulsen_crossovers()
    assert points["paulsen_shields"] == pytest.approx(1.85443, abs=1e-4)
    assert points["paulsen_thm1"] == pytest.approx(1.9878813, abs=1e-4)
    assert points["paulsen_three"] == pytest.approx(2.0952978, abs=1e-4)
    # shields = thm1 reduces to R^3 - 2R^2 - 3R - 2 = 0
    root = mpmath.findroot(lambda R: R**3 - 2 * R**2 - 3 * R - 2, 3.15)
    assert points["shields_thm1"] == pytest.approx(float(root), abs=1e-8)


def test_paulsen_three_against_high_precision_root():
    def excess(R):
        return mpmath.nsum(lambda n: 4 / (1 + R ** (2 * n)), [1, mpmath.inf]) - 1

    root = mpmath.findroot(excess, 2.1)
    assert paulsen_crossovers()["paulsen_three"] == pytest.approx(float(root), abs=1e-8)
