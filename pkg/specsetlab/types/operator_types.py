"""
Value types for the matrix functional calculus: rational functions (scalar and block),
problem instances, kernel values and quadrature results.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

import numpy as np
from numpy.polynomial import polynomial as P

from specsetlab.types.geometry_types import (
    INFINITY,
    GeneralizedDisk,
    MoebiusMap,
    complex_asdict,
    is_infinite,
)
from specsetlab.utils.exceptions import InvalidRationalFunctionError, MatrixShapeError

ROOT_MATCH_TOL = 1e-10
_TRIM_TOL = 1e-14


def _coefficients(values, name: str) -> np.ndarray:
    coeffs = np.atleast_1d(np.asarray(values, dtype=complex))
    if coeffs.ndim != 1 or coeffs.size == 0 or not np.all(np.isfinite(coeffs)):
        raise InvalidRationalFunctionError(f"{name} coefficients must be a finite non-empty list")
    scale = float(np.max(np.abs(coeffs)))
    keep = np.nonzero(np.abs(coeffs) > _TRIM_TOL * scale)[0]
    if keep.size == 0:
        return np.zeros(1, dtype=complex)
    return coeffs[: keep[-1] + 1]


def _cancel_common_roots(num: np.ndarray, den: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    while num.size > 1 and den.size > 1:
        num_roots, den_roots = P.polyroots(num), P.polyroots(den)
        gaps = np.abs(num_roots[:, None] - den_roots[None, :])
        i, j = np.unravel_index(np.argmin(gaps), gaps.shape)
        if gaps[i, j] > ROOT_MATCH_TOL * max(1.0, abs(den_roots[j])):
            break
        root = 0.5 * (num_roots[i] + den_roots[j])
        num = P.polydiv(num, np.array([-root, 1.0]))[0]
        den = P.polydiv(den, np.array([-root, 1.0]))[0]
    return num, den


@dataclass(frozen=True)
class RationalFunction:
    """
    ``f = p / q`` with complex coefficients in ascending degree.

    The representation is reduced on construction: trailing zero coefficients are trimmed,
    common roots of ``p`` and ``q`` closer than ``1e-10`` are cancelled and ``q`` is made monic.
    """

    num: tuple[complex, ...]
    den: tuple[complex, ...] = (1.0,)

    def __post_init__(self):
        num = _coefficients(self.num, "numerator")
        den = _coefficients(self.den, "denominator")
        if not np.any(den):
            raise InvalidRationalFunctionError("denominator is identically zero")
        if not np.any(num):
            num, den = np.zeros(1, dtype=complex), np.ones(1, dtype=complex)
        num, den = _cancel_common_roots(num, den)
        lead = den[-1]
        object.__setattr__(self, "num", tuple(complex(c) for c in num / lead))
        object.__setattr__(self, "den", tuple(complex(c) for c in den / lead))

    @classmethod
    def constant(cls, value: complex) -> "RationalFunction":
        return cls((value,))

    @classmethod
    def identity(cls) -> "RationalFunction":
        return cls((0.0, 1.0))

    @classmethod
    def polynomial(cls, coefficients) -> "RationalFunction":
        return cls(tuple(coefficients))

    @classmethod
    def from_poles(cls, constant: complex, residues, poles) -> "RationalFunction":
        """``constant + sum_i residues[i] / (z - poles[i])``."""
        f = cls.constant(constant)
        for c, p in zip(residues, poles):
            f = f + cls((c,), (-p, 1.0))
        return f

    @property
    def degree_num(self) -> int:
        return 0 if not any(self.num) else len(self.num) - 1

    @property
    def degree_den(self) -> int:
        return len(self.den) - 1

    @property
    def is_polynomial(self) -> bool:
        return self.degree_den == 0

    @property
    def is_bounded_at_infinity(self) -> bool:
        return self.degree_num <= self.degree_den

    @property
    def value_at_infinity(self) -> complex:
        if self.degree_num > self.degree_den:
            return INFINITY
        if self.degree_num < self.degree_den:
            return 0j
        return self.num[-1] / self.den[-1]

    def poles(self) -> np.ndarray:
        """Finite poles (roots of the reduced denominator)."""
        if self.degree_den == 0:
            return np.zeros(0, dtype=complex)
        return P.polyroots(np.array(self.den))

    def __call__(self, z: complex) -> complex:
        if is_infinite(z):
            return self.value_at_infinity
        z = complex(z)
        num, den = np.array(self.num), np.array(self.den)
        if abs(z) <= 1.0:
            p, q = P.polyval(z, num), P.polyval(z, den)
            return INFINITY if q == 0 else complex(p / q)
        u = 1.0 / z
        p, q = P.polyval(u, num[::-1]), P.polyval(u, den[::-1])
        if q == 0:
            return INFINITY
        return complex(z ** (len(num) - len(den)) * p / q)

    def __add__(self, other: "RationalFunction | complex") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other)
        num = P.polyadd(P.polymul(self.num, other.den), P.polymul(other.num, self.den))
        return RationalFunction(tuple(num), tuple(P.polymul(self.den, other.den)))

    __radd__ = __add__

    def __mul__(self, other: "RationalFunction | complex") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other)
        return RationalFunction(
            tuple(P.polymul(self.num, other.num)), tuple(P.polymul(self.den, other.den))
        )

    __rmul__ = __mul__

    def derivative(self) -> "RationalFunction":
        num, den = np.array(self.num), np.array(self.den)
        top = P.polysub(P.polymul(P.polyder(num), den), P.polymul(num, P.polyder(den)))
        return RationalFunction(tuple(top), tuple(P.polymul(den, den)))

    def compose_mobius(self, phi: MoebiusMap) -> "RationalFunction":
        """``f o phi`` as a reduced rational function."""
        top = np.array([phi.b, phi.a])
        bottom = np.array([phi.d, phi.c])
        order = max(len(self.num), len(self.den)) - 1

        def lift(coeffs: tuple[complex, ...]) -> np.ndarray:
            total = np.zeros(1, dtype=complex)
            for k, c in enumerate(coeffs):
                term = P.polymul(P.polypow(top, k), P.polypow(bottom, order - k))
                total = P.polyadd(total, c * term)
            return total

        return RationalFunction(tuple(lift(self.num)), tuple(lift(self.den)))

    def asdict(self) -> dict:
        return {
            "num": [complex_asdict(c) for c in self.num],
            "den": [complex_asdict(c) for c in self.den],
        }

    def __repr__(self) -> str:
        return f"RationalFunction(deg {self.degree_num}/{self.degree_den})"


@dataclass(frozen=True)
class RationalMatrixFunction:
    """Square block ``(f_ij)`` of rational functions; a 1x1 block stands for a scalar ``f``."""

    blocks: tuple[tuple[RationalFunction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.blocks)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise InvalidRationalFunctionError("block function must be a non-empty square array")
        object.__setattr__(self, "blocks", rows)

    @classmethod
    def scalar(cls, f: RationalFunction) -> "RationalMatrixFunction":
        return cls(((f,),))

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def is_scalar(self) -> bool:
        return self.size == 1

    def entries(self) -> Iterator[RationalFunction]:
        for row in self.blocks:
            yield from row

    @property
    def is_bounded_at_infinity(self) -> bool:
        return all(f.is_bounded_at_infinity for f in self.entries())

    def poles(self) -> np.ndarray:
        poles = [f.poles() for f in self.entries()]
        return np.concatenate(poles) if poles else np.zeros(0, dtype=complex)

    def __call__(self, z: complex) -> np.ndarray:
        return np.array([[f(z) for f in row] for row in self.blocks], dtype=complex)

    def __mul__(self, other: "RationalMatrixFunction") -> "RationalMatrixFunction":
        m = self.size
        if other.size != m:
            raise InvalidRationalFunctionError("block sizes differ")
        product = []
        for i in range(m):
            row = []
            for j in range(m):
                entry = RationalFunction.constant(0)
                for k in range(m):
                    entry = entry + self.blocks[i][k] * other.blocks[k][j]
                row.append(entry)
            product.append(tuple(row))
        return RationalMatrixFunction(tuple(product))

    def asdict(self) -> dict:
        if self.is_scalar:
            return self.blocks[0][0].asdict()
        return {"blocks": [[f.asdict() for f in row] for row in self.blocks]}


FunctionLike = RationalFunction | RationalMatrixFunction


def as_block(f: FunctionLike) -> RationalMatrixFunction:
    if isinstance(f, RationalMatrixFunction):
        return f
    return RationalMatrixFunction.scalar(f)


def check_matrix(A) -> np.ndarray:
    """Validate and return ``A`` as a finite square complex array."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise MatrixShapeError(A.shape)
    if not np.all(np.isfinite(A)):
        raise MatrixShapeError(A.shape, "matrix has non-finite entries")
    return A


def matrix_asdict(A: np.ndarray) -> dict:
    return {"n": int(A.shape[0]), "re": A.real.tolist(), "im": A.imag.tolist()}


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """
    Operator ``A``, disks each assumed spectral for ``A`` and a (block) rational function.

    Use ``HypothesisValidator`` to check the spectral-set hypotheses after loading.
    """

    matrix: np.ndarray
    disks: tuple[GeneralizedDisk, ...]
    function: RationalMatrixFunction
    seed: int | None = None
    kind: str = "custom"
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrix", check_matrix(self.matrix))
        object.__setattr__(self, "disks", tuple(self.disks))
        object.__setattr__(self, "function", as_block(self.function))

    @property
    def n_dim(self) -> int:
        return self.matrix.shape[0]

    def asdict(self) -> dict:
        return {
            "matrix": matrix_asdict(self.matrix),
            "disks": [D.asdict() for D in self.disks],
            "function": self.function.asdict(),
            "seed": self.seed,
            "kind": self.kind,
            "name": self.name,
        }


class KernelKind(Enum):
    POISSON = "poisson"
    RESIDUAL = "residual"


@dataclass(frozen=True, eq=False)
class KernelValue:
    value: np.ndarray
    kind: KernelKind
    point: complex
    disk: GeneralizedDisk


@dataclass(frozen=True, eq=False)
class QuadratureResult:
    value: np.ndarray
    error: float
    panels: int
    evaluations: int = 0


@dataclass(frozen=True, eq=False)
class DecompositionReport:
    """Result of ``f(A) = g_p(f) + g_r(f)``; ``defect`` compares with direct evaluation."""

    g_poisson: np.ndarray
    g_residual: np.ndarray
    f_direct: np.ndarray
    defect: float
    sup_norm: float
    bound: float
    panels: int
    epsilon: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def norm_gp(self) -> float:
        return float(np.linalg.norm(self.g_poisson, 2))

    @property
    def norm_gr(self) -> float:
        return float(np.linalg.norm(self.g_residual, 2))

    @property
    def norm_fA(self) -> float:
        return float(np.linalg.norm(self.f_direct, 2))

    def asdict(self) -> dict:
        return {
            "defect": self.defect,
            "norm_gp": self.norm_gp,
            "norm_gr": self.norm_gr,
            "norm_fA": self.norm_fA,
            "sup_norm": self.sup_norm,
            "bound": self.bound,
            "panels": self.panels,
            "epsilon": self.epsilon,
        }
