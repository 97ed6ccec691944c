"""
Value types for circline geometry on the Riemann sphere.

Every generalized disk is stored by its defining fields and exposes a signed Hermitian form
``H`` with ``D = {v : v* H v <= 0}`` in homogeneous coordinates ``v = (z, 1)`` (``v = (1, 0)``
for infinity), normalized to ``det H = -1``. Moebius maps act on these forms linearly, which
keeps circles and lines in a single code path.
"""

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from specsetlab.utils.exceptions import (
    DegenerateCirclineError,
    DegenerateMoebiusError,
    InvalidDiskError,
    PointAtInfinityError,
)

INFINITY = complex(math.inf, 0.0)
TWO_PI = 2.0 * math.pi
_SIGN_TOL = 1e-12
_LINE_TOL = 1e-13


def is_infinite(z: complex | float) -> bool:
    return cmath.isinf(z)


def complex_asdict(z: complex) -> list[float] | str:
    if is_infinite(z):
        return "inf"
    return [float(z.real), float(z.imag)]


def complex_from_json(value) -> complex:
    if isinstance(value, str):
        return INFINITY if value == "inf" else complex(value)
    if isinstance(value, (list, tuple)):
        re, im = value
        return complex(float(re), float(im))
    return complex(value)


def _wrap_angle(theta: float) -> float:
    theta = math.remainder(theta, TWO_PI)
    return math.pi if theta <= -math.pi else theta


class DiskKind(Enum):
    INTERIOR = "disk"
    EXTERIOR = "exterior"
    HALF_PLANE = "halfplane"


class PairCase(Enum):
    ANNULUS = "annulus"
    SECTOR = "sector"
    STRIP = "strip"


class PairRelation(Enum):
    CROSSING = "crossing"
    TANGENT_STRIP = "tangent_strip"
    SEPARATED = "separated"
    NESTED = "nested"
    DISJOINT = "disjoint"
    TANGENT_OUTSIDE = "tangent_outside"
    IDENTICAL = "identical"


@dataclass(frozen=True)
class Circline:
    """
    Point set ``{z : a|z|^2 + conj(b) z + b conj(z) + c = 0}``; a line when ``a == 0``.

    Instances built through :meth:`from_hermitian` are projectively normalized:
    ``max(|a|, |b|, |c|) == 1`` and the first nonzero of ``(a, Re b, Im b, c)`` is positive.
    """

    a: float
    b: complex
    c: float

    def __post_init__(self):
        discriminant = abs(self.b) ** 2 - self.a * self.c
        scale = max(abs(self.a), abs(self.b), abs(self.c)) ** 2
        if not math.isfinite(discriminant) or discriminant <= _SIGN_TOL * scale:
            raise DegenerateCirclineError(discriminant)

    @classmethod
    def from_hermitian(cls, H: np.ndarray) -> "Circline":
        a, b, c = float(H[0, 0].real), complex(H[0, 1]), float(H[1, 1].real)
        scale = max(abs(a), abs(b), abs(c))
        a, b, c = a / scale, b / scale, c / scale
        for value in (a, b.real, b.imag, c):
            if abs(value) > _SIGN_TOL:
                if value < 0:
                    a, b, c = -a, -b, -c
                break
        return cls(a=a, b=b, c=c)

    def hermitian(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.b.conjugate(), self.c]], dtype=complex)

    @property
    def is_line(self) -> bool:
        return abs(self.a) <= _LINE_TOL

    @property
    def center(self) -> complex:
        return INFINITY if self.is_line else -self.b / self.a

    @property
    def radius(self) -> float:
        if self.is_line:
            return math.inf
        return math.sqrt(abs(self.b) ** 2 - self.a * self.c) / abs(self.a)

    def residual(self, z: complex) -> float:
        """Value of the defining form at ``z`` (``a`` at infinity)."""
        if is_infinite(z):
            return self.a
        return self.a * abs(z) ** 2 + 2.0 * (self.b * z.conjugate()).real + self.c

    def isclose(self, other: "Circline", tol: float = 1e-9) -> bool:
        return (
            abs(self.a - other.a) <= tol
            and abs(self.b - other.b) <= tol
            and abs(self.c - other.c) <= tol
        )

    def asdict(self) -> dict:
        return {"a": self.a, "b": complex_asdict(self.b), "c": self.c}


@dataclass(frozen=True)
class GeneralizedDisk:
    """
    Closed disk of the Riemann sphere.

    ``INTERIOR``: ``|z - center| <= radius``. ``EXTERIOR``: ``|z - center| >= radius`` plus
    infinity. ``HALF_PLANE``: ``Re(exp(-i theta)(z - anchor)) >= 0`` plus infinity, so
    ``exp(i theta)`` is the inward normal.
    """

    kind: DiskKind
    center: complex | None = None
    radius: float | None = None
    theta: float | None = None
    anchor: complex | None = None

    def __post_init__(self):
        match self.kind:
            case DiskKind.INTERIOR | DiskKind.EXTERIOR:
                if self.center is None or not cmath.isfinite(complex(self.center)):
                    raise InvalidDiskError("center", self.center)
                if self.radius is None or not math.isfinite(self.radius) or self.radius <= 0:
                    raise InvalidDiskError("radius", self.radius)
                object.__setattr__(self, "center", complex(self.center))
                object.__setattr__(self, "radius", float(self.radius))
            case DiskKind.HALF_PLANE:
                if self.theta is None or not math.isfinite(self.theta):
                    raise InvalidDiskError("theta", self.theta)
                anchor = 0j if self.anchor is None else complex(self.anchor)
                if not cmath.isfinite(anchor):
                    raise InvalidDiskError("anchor", self.anchor)
                object.__setattr__(self, "theta", _wrap_angle(float(self.theta)))
                object.__setattr__(self, "anchor", anchor)
            case _:
                raise InvalidDiskError("kind", self.kind)

    @classmethod
    def interior(cls, center: complex, radius: float) -> "GeneralizedDisk":
        return cls(DiskKind.INTERIOR, center=center, radius=radius)

    @classmethod
    def exterior(cls, center: complex, radius: float) -> "GeneralizedDisk":
        return cls(DiskKind.EXTERIOR, center=center, radius=radius)

    @classmethod
    def half_plane(cls, theta: float, anchor: complex = 0j) -> "GeneralizedDisk":
        return cls(DiskKind.HALF_PLANE, theta=theta, anchor=anchor)

    @classmethod
    def from_hermitian(cls, H: np.ndarray) -> "GeneralizedDisk":
        """
        Recover the disk ``{v : v* H v <= 0}`` from a Hermitian form with negative determinant.

        Raises:
            DegenerateCirclineError: If ``det H >= 0`` (empty set, point or whole sphere).
        """
        H = 0.5 * (H + H.conj().T)
        det = float((H[0, 0] * H[1, 1]).real - abs(H[0, 1]) ** 2)
        scale = float(np.max(np.abs(H))) ** 2
        if not math.isfinite(det) or det >= -_SIGN_TOL * scale:
            raise DegenerateCirclineError(-det)
        H = H / math.sqrt(-det)
        h11, h12, h22 = float(H[0, 0].real), complex(H[0, 1]), float(H[1, 1].real)
        if abs(h11) <= _LINE_TOL * max(1.0, abs(h12), abs(h22)):
            inward = -h12
            theta = cmath.phase(inward)
            anchor = cmath.exp(1j * theta) * h22 / (2.0 * abs(inward))
            return cls.half_plane(theta, anchor)
        center = -h12 / h11
        radius = 1.0 / abs(h11)
        if h11 > 0:
            return cls.interior(center, radius)
        return cls.exterior(center, radius)

    @classmethod
    def from_dict(cls, data: dict) -> "GeneralizedDisk":
        """Inverse of :meth:`asdict`."""
        try:
            kind = DiskKind(data["kind"])
        except (KeyError, ValueError):
            raise InvalidDiskError("kind", data.get("kind"))
        try:
            match kind:
                case DiskKind.HALF_PLANE:
                    anchor = complex_from_json(data.get("anchor", [0.0, 0.0]))
                    return cls.half_plane(float(data["theta"]), anchor)
                case _:
                    center = complex_from_json(data["center"])
                    return cls(kind, center=center, radius=float(data["radius"]))
        except KeyError as missing:
            raise InvalidDiskError(missing.args[0], None)
        except (TypeError, ValueError):
            raise InvalidDiskError("value", data)

    @property
    def contains_infinity(self) -> bool:
        return self.kind is not DiskKind.INTERIOR

    @property
    def normal(self) -> complex:
        """Inward unit normal of a half-plane."""
        return cmath.exp(1j * self.theta)

    def hermitian(self) -> np.ndarray:
        """Signed form with ``det == -1`` and ``D = {v* H v <= 0}``."""
        match self.kind:
            case DiskKind.INTERIOR | DiskKind.EXTERIOR:
                w, r = self.center, self.radius
                H = np.array([[1.0, -w], [-w.conjugate(), abs(w) ** 2 - r * r]], dtype=complex) / r
                return H if self.kind is DiskKind.INTERIOR else -H
            case DiskKind.HALF_PLANE:
                e = self.normal
                offset = 2.0 * (e.conjugate() * self.anchor).real
                return np.array([[0.0, -e], [-e.conjugate(), offset]], dtype=complex)

    @property
    def boundary(self) -> Circline:
        return Circline.from_hermitian(self.hermitian())

    def asdict(self) -> dict:
        match self.kind:
            case DiskKind.HALF_PLANE:
                return {
                    "kind": self.kind.value,
                    "anchor": complex_asdict(self.anchor),
                    "theta": self.theta,
                }
            case _:
                return {
                    "kind": self.kind.value,
                    "center": complex_asdict(self.center),
                    "radius": self.radius,
                }

    def __repr__(self) -> str:
        match self.kind:
            case DiskKind.HALF_PLANE:
                return f"HalfPlane(theta={self.theta:.6g}, anchor={self.anchor:.6g})"
            case DiskKind.INTERIOR:
                return f"DiskInterior(center={self.center:.6g}, radius={self.radius:.6g})"
            case DiskKind.EXTERIOR:
                return f"DiskExterior(center={self.center:.6g}, radius={self.radius:.6g})"


@dataclass(frozen=True)
class MoebiusMap:
    """``z -> (a z + b) / (c z + d)``, coefficients rescaled to ``ad - bc == 1``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        scale = max(abs(a), abs(b), abs(c), abs(d)) ** 2
        if not cmath.isfinite(det) or abs(det) <= 1e-14 * scale or scale == 0:
            raise DegenerateMoebiusError(det)
        s = cmath.sqrt(det)
        for name, value in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, value / s)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, M: np.ndarray) -> "MoebiusMap":
        return cls(M[0, 0], M[0, 1], M[1, 0], M[1, 1])

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def pole(self) -> complex:
        """Preimage of infinity."""
        return INFINITY if self.c == 0 else -self.d / self.c

    def apply(self, z: complex) -> complex:
        if is_infinite(z):
            return INFINITY if self.c == 0 else self.a / self.c
        z = complex(z)
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return (self.a * z + self.b) / den

    __call__ = apply

    def derivative(self, z: complex) -> complex:
        if is_infinite(z):
            raise PointAtInfinityError("Moebius derivative")
        den = self.c * complex(z) + self.d
        if den == 0:
            return INFINITY
        return 1.0 / (den * den)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """``self o other``."""
        return MoebiusMap.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def isclose(self, other: "MoebiusMap", tol: float = 1e-12) -> bool:
        """Equality up to the global sign left free by the normalization."""
        mine, theirs = self.matrix(), other.matrix()
        return bool(
            np.allclose(mine, theirs, atol=tol, rtol=0) or np.allclose(mine, -theirs, atol=tol, rtol=0)
        )

    def asdict(self) -> dict:
        return {name: complex_asdict(getattr(self, name)) for name in "abcd"}


@dataclass(frozen=True)
class OrientedArc:
    """
    Sub-arc of a circline, parametrized through a chart of the unit circle.

    The point at parameter ``t`` is ``chart(exp(i t))`` for ``t_start <= t <= t_end``. The chart
    maps the unit disk onto the side of the carrier that lies to the left of increasing ``t``.
    ``orientation = -1`` traverses the arc with decreasing ``t``. Charts stay bounded through
    infinity, so arcs on lines need no special casing; ``ds = speed(t) dt``.
    """

    carrier: Circline
    chart: MoebiusMap
    t_start: float
    t_end: float
    orientation: int = 1

    def point(self, t: float) -> complex:
        w = cmath.exp(1j * t)
        den = self.chart.c * w + self.chart.d
        if abs(den) <= 1e-13 * (abs(self.chart.c) + abs(self.chart.d)):
            return INFINITY
        return (self.chart.a * w + self.chart.b) / den

    def velocity(self, t: float) -> complex:
        """``d sigma / dt`` for increasing ``t``."""
        w = cmath.exp(1j * t)
        den = self.chart.c * w + self.chart.d
        return 1j * w / (den * den)

    def speed(self, t: float) -> float:
        return abs(self.velocity(t))

    def tangent(self, t: float) -> complex:
        """Unit tangent ``d sigma / ds`` along the traversal direction."""
        v = self.velocity(t)
        return self.orientation * v / abs(v)

    @property
    def start(self) -> complex:
        return self.point(self.t_start if self.orientation > 0 else self.t_end)

    @property
    def end(self) -> complex:
        return self.point(self.t_end if self.orientation > 0 else self.t_start)

    @property
    def span(self) -> float:
        return self.t_end - self.t_start

    @property
    def is_closed(self) -> bool:
        return self.span >= TWO_PI - 1e-12

    def midpoint(self) -> complex:
        return self.point(0.5 * (self.t_start + self.t_end))

    def infinity_parameters(self, margin: float = 1e-12) -> list[float]:
        """Parameters strictly inside ``(t_start, t_end)`` where the arc passes through infinity."""
        c, d = self.chart.c, self.chart.d
        if c == 0 or abs(abs(c) - abs(d)) > 1e-12 * (abs(c) + abs(d)):
            return []
        base = cmath.phase(-d / c) % TWO_PI
        first = base + TWO_PI * math.ceil((self.t_start - base) / TWO_PI)
        hits = []
        t = first
        while t < self.t_end - margin:
            if t > self.t_start + margin:
                hits.append(t)
            t += TWO_PI
        return hits

    def split_at_infinity(self) -> tuple["OrientedArc", ...]:
        cuts = [self.t_start, *self.infinity_parameters(), self.t_end]
        return tuple(replace(self, t_start=lo, t_end=hi) for lo, hi in zip(cuts[:-1], cuts[1:]))

    def reversed(self) -> "OrientedArc":
        return replace(self, orientation=-self.orientation)

    def parameter_of(self, z: complex, tol: float = 1e-8) -> float | None:
        """Parameter of ``z`` if it lies on this arc (within ``tol`` in the chart), else None."""
        w = self.chart.inverse().apply(z)
        if is_infinite(w) or abs(abs(w) - 1.0) > tol:
            return None
        t = cmath.phase(w)
        t = t + TWO_PI * math.ceil((self.t_start - tol - t) / TWO_PI)
        return t if t <= self.t_end + tol else None

    def sample(self, count: int) -> np.ndarray:
        """Interior parameters, evenly spaced."""
        return self.t_start + self.span * (np.arange(count) + 0.5) / count

    def asdict(self) -> dict:
        return {
            "carrier": self.carrier.asdict(),
            "chart": self.chart.asdict(),
            "t": [self.t_start, self.t_end],
            "orient": self.orientation,
            "start": complex_asdict(self.start),
            "end": complex_asdict(self.end),
        }


@dataclass(frozen=True)
class CanonicalPairConfig:
    """
    Normalized form of an ordered disk pair.

    ``mapping`` sends ``(D1, D2)`` onto ``canonical_disks()``: the annulus pair
    ``{|z| <= R}, {|z| >= 1/R}``, the sector pair ``{Re(e^{i theta} z) >= 0},
    {Re(e^{-i theta} z) >= 0}`` or the strip pair ``{Im z <= 1}, {Im z >= -1}``.
    """

    case: PairCase
    mapping: MoebiusMap
    parameter: float | None = None

    def canonical_disks(self) -> tuple[GeneralizedDisk, GeneralizedDisk]:
        match self.case:
            case PairCase.ANNULUS:
                R = self.parameter
                return GeneralizedDisk.interior(0, R), GeneralizedDisk.exterior(0, 1.0 / R)
            case PairCase.SECTOR:
                theta = self.parameter
                return GeneralizedDisk.half_plane(-theta), GeneralizedDisk.half_plane(theta)
            case PairCase.STRIP:
                return (
                    GeneralizedDisk.half_plane(-math.pi / 2, 1j),
                    GeneralizedDisk.half_plane(math.pi / 2, -1j),
                )

    def asdict(self) -> dict:
        return {
            "case": self.case.value,
            "parameter": self.parameter,
            "mapping": self.mapping.asdict(),
        }
