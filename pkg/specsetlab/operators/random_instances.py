"""
Seeded generators of problem instances whose hypotheses hold by construction: every disk is a
spectral set for the matrix, the spectrum is interior and the poles of ``f`` avoid ``X``.
"""

import math
from typing import Sequence

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from specsetlab.geometry.sphere_geometry import classify_pair, interior_margin
from specsetlab.operators.operator_core import is_spectral, spectrum_in_interior
from specsetlab.types.geometry_types import DiskKind, GeneralizedDisk, PairRelation
from specsetlab.types.operator_types import ProblemInstance, RationalFunction, RationalMatrixFunction
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import (
    InstanceHypothesisError,
    InvalidValue,
    ResolventAtSpectrumError,
)

logger = get_logger(__name__, "warning")

KINDS = ("annulus", "sector", "strip", "lens", "n_disks")
SAFETY = 0.95
POLE_MARGIN = 0.1
MAX_SCALE = 8.0
_ADMISSIBLE = (PairRelation.CROSSING, PairRelation.SEPARATED, PairRelation.TANGENT_STRIP)


def parse_kind(kind: str) -> tuple[str, int | None]:
    """``"n_disks3"`` -> ``("n_disks", 3)``; other kinds carry no count."""
    if kind.startswith("n_disks") and kind != "n_disks":
        return "n_disks", int(kind.removeprefix("n_disks"))
    if kind not in KINDS:
        raise InvalidValue("kind", kind, f"expected one of {KINDS} or n_disks<k>")
    return kind, None


def _gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    G = _gaussian(rng, n)
    return 0.5 * (G + G.conj().T)


def _unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 1:
        return np.array([[np.exp(2j * math.pi * rng.random())]])
    return unitary_group.rvs(n, random_state=rng)


def _positive(rng: np.random.Generator, n: int, low: float = 0.2, high: float = 2.0) -> np.ndarray:
    V = _unitary(rng, n)
    return V @ np.diag(rng.uniform(low, high, n)) @ V.conj().T


def annulus_matrix(rng: np.random.Generator, n: int, R: float) -> np.ndarray:
    """``A = U G`` with unitary ``U`` and ``R^-s <= G <= R^s``, ``s = 0.95``."""
    V = _unitary(rng, n)
    spread = SAFETY * math.log(R)
    G = V @ np.diag(np.exp(rng.uniform(-spread, spread, n))) @ V.conj().T
    return _unitary(rng, n) @ G


def sector_matrix(rng: np.random.Generator, n: int, theta: float) -> np.ndarray:
    """``A = B^{1/2}(I + iC)B^{1/2}`` with ``B > 0`` and ``||C|| = tan(0.95 (pi/2 - theta))``."""
    B_half = scipy.linalg.sqrtm(_positive(rng, n))
    C = _hermitian(rng, n)
    C *= math.tan(SAFETY * (math.pi / 2 - theta)) / max(np.max(np.abs(np.linalg.eigvalsh(C))), 1e-300)
    return B_half @ (np.eye(n) + 1j * C) @ B_half


def strip_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    """``A = B + iC`` with Hermitian ``B, C`` and ``||C|| <= 0.95``."""
    C = _hermitian(rng, n)
    C *= SAFETY * rng.uniform(0.5, 1.0) / max(np.max(np.abs(np.linalg.eigvalsh(C))), 1e-300)
    return _hermitian(rng, n) + 1j * C


def _shrink(D: GeneralizedDisk, amount: float) -> GeneralizedDisk:
    match D.kind:
        case DiskKind.INTERIOR:
            return GeneralizedDisk.interior(D.center, D.radius - amount)
        case DiskKind.EXTERIOR:
            return GeneralizedDisk.exterior(D.center, D.radius + amount)
        case DiskKind.HALF_PLANE:
            return GeneralizedDisk.half_plane(D.theta, D.anchor + amount * D.normal)


def _feasible(A: np.ndarray, disks: Sequence[GeneralizedDisk]) -> bool:
    try:
        return all(is_spectral(A, D) for D in disks)
    except ResolventAtSpectrumError:
        return False


def scaled_matrix(
    rng: np.random.Generator, n: int, disks: Sequence[GeneralizedDisk], center: complex
) -> np.ndarray:
    """
    ``A = center I + t M`` for a random ``M`` of unit norm, with the largest ``t`` (found by
    bisection) keeping ``A`` spectral for slightly shrunk disks.
    """
    M = _gaussian(rng, n)
    M /= np.linalg.norm(M, 2)
    depth = min(interior_margin(D, center) for D in disks)
    shrunk = [_shrink(D, 0.05 * depth) for D in disks]
    identity = center * np.eye(n)
    lo, hi = 0.0, 1.0
    while _feasible(identity + hi * M, shrunk) and hi < MAX_SCALE:
        lo, hi = hi, 2.0 * hi
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if _feasible(identity + mid * M, shrunk) else (lo, mid)
    return identity + rng.uniform(0.3, 1.0) * lo * M


def lens_disks() -> tuple[GeneralizedDisk, GeneralizedDisk]:
    return GeneralizedDisk.interior(-0.6, 1.0), GeneralizedDisk.interior(0.6, 1.0)


def random_disks(rng: np.random.Generator, count: int, max_tries: int = 200) -> tuple[GeneralizedDisk, ...]:
    """
    ``count`` pairwise admissible disks, all containing a neighbourhood of 0.

    Raises:
        InstanceHypothesisError: If no admissible family turned up within ``max_tries`` draws.
    """
    for _ in range(max_tries):
        disks = []
        for _ in range(count):
            match int(rng.integers(3)):
                case 0:
                    radius = rng.uniform(1.0, 2.0)
                    center = radius * rng.uniform(0.0, 0.6) * np.exp(2j * math.pi * rng.random())
                    disks.append(GeneralizedDisk.interior(center, radius))
                case 1:
                    distance = rng.uniform(1.5, 3.0)
                    center = distance * np.exp(2j * math.pi * rng.random())
                    disks.append(GeneralizedDisk.exterior(center, distance * rng.uniform(0.3, 0.7)))
                case _:
                    theta = 2.0 * math.pi * rng.random()
                    anchor = -rng.uniform(0.5, 1.5) * np.exp(1j * theta)
                    disks.append(GeneralizedDisk.half_plane(theta, anchor))
        if all(
            classify_pair(disks[j], disks[k]) in _ADMISSIBLE
            for j in range(count)
            for k in range(j + 1, count)
        ):
            return tuple(disks)
    raise InstanceHypothesisError(f"no admissible family of {count} disks in {max_tries} draws")


def _outside(disks: Sequence[GeneralizedDisk], z: complex, margin: float) -> bool:
    return min(interior_margin(D, z) for D in disks) < -margin


def random_rational(
    rng: np.random.Generator,
    disks: Sequence[GeneralizedDisk],
    degree: int = 3,
    block_size: int = 1,
    center: complex = 0j,
    margin: float = POLE_MARGIN,
) -> RationalMatrixFunction:
    """
    Random ``c0 + sum_i c_i / (z - p_i)`` per block entry, poles at least ``margin`` outside
    ``X``; a linear term is added only when ``X`` is bounded.
    """
    bounded = not all(D.contains_infinity for D in disks)

    def entry() -> RationalFunction:
        poles = []
        while len(poles) < degree:
            z = center + 2.5 * complex(*rng.standard_normal(2))
            if _outside(disks, z, margin):
                poles.append(z)
        residues = [complex(*rng.standard_normal(2)) / math.sqrt(2.0) for _ in poles]
        f = RationalFunction.from_poles(complex(*rng.standard_normal(2)), residues, poles)
        if bounded and degree > 0:
            f = f + RationalFunction((0.0, complex(*rng.standard_normal(2)) / 4.0))
        return f

    return RationalMatrixFunction(
        tuple(tuple(entry() for _ in range(block_size)) for _ in range(block_size))
    )


def random_instance(
    kind: str = "annulus",
    n_dim: int = 4,
    seed: int = 0,
    radius: float = 2.0,
    theta: float = math.pi / 3,
    n_disks: int = 3,
    degree: int = 3,
    block_size: int = 1,
) -> ProblemInstance:
    """
    Deterministic random instance of the given kind.

    ``annulus``: ``{|z| <= R}, {|z| >= 1/R}`` with ``A = U G``. ``sector``: the symmetric sector
    of half-opening ``pi/2 - theta``. ``strip``: ``{|Im z| <= 1}``. ``lens``: two crossing unit
    disks. ``n_disks`` (or ``n_disks<k>``): ``k`` random admissible disks around 0.

    Raises:
        InstanceHypothesisError: If the generated instance fails its own post-check.
    """
    kind, count = parse_kind(kind)
    if count is not None:
        n_disks = count
    rng = np.random.default_rng(seed)
    match kind:
        case "annulus":
            disks = (GeneralizedDisk.interior(0.0, radius), GeneralizedDisk.exterior(0.0, 1.0 / radius))
            A = annulus_matrix(rng, n_dim, radius)
        case "sector":
            disks = (GeneralizedDisk.half_plane(-theta), GeneralizedDisk.half_plane(theta))
            A = sector_matrix(rng, n_dim, theta)
        case "strip":
            disks = (
                GeneralizedDisk.half_plane(-math.pi / 2, 1j),
                GeneralizedDisk.half_plane(math.pi / 2, -1j),
            )
            A = strip_matrix(rng, n_dim)
        case "lens":
            disks = lens_disks()
            A = scaled_matrix(rng, n_dim, disks, 0j)
        case "n_disks":
            disks = random_disks(rng, n_disks)
            A = scaled_matrix(rng, n_dim, disks, 0j)
    center = 1.0 if kind in ("annulus", "sector") else 0j
    F = random_rational(rng, disks, degree, block_size, center)
    if not (_feasible(A, disks) and spectrum_in_interior(A, disks)):
        raise InstanceHypothesisError(f"generated {kind} instance (seed {seed}) is not admissible")
    logger.debug(f"random {kind} instance, n={n_dim}, seed={seed}")
    return ProblemInstance(matrix=A, disks=disks, function=F, seed=seed, kind=kind)
