"""
Adaptive Gauss-Legendre quadrature for matrix-valued integrands along oriented arcs.

Panels are refined globally: the panel with the largest error estimate (the distance between
its 15- and 7-point rules) is bisected until the summed estimate meets the tolerance.
"""

import heapq
from enum import Enum
from typing import Callable

import numpy as np

from specsetlab.types.geometry_types import OrientedArc, is_infinite
from specsetlab.types.operator_types import FunctionLike, QuadratureResult, as_block
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import PoleOnPathError, QuadratureConvergenceError

logger = get_logger(__name__, "warning")

_NODES_15, _WEIGHTS_15 = np.polynomial.legendre.leggauss(15)
_NODES_7, _WEIGHTS_7 = np.polynomial.legendre.leggauss(7)

POLE_MARGIN = 1e-8


class Measure(Enum):
    ARCLENGTH = "ds"
    COMPLEX = "dsigma"


Integrand = Callable[[float], np.ndarray]


def _panel(integrand: Integrand, a: float, b: float) -> tuple[np.ndarray, float]:
    half, mid = 0.5 * (b - a), 0.5 * (a + b)
    fine = sum(w * integrand(mid + half * x) for x, w in zip(_NODES_15, _WEIGHTS_15)) * half
    coarse = sum(w * integrand(mid + half * x) for x, w in zip(_NODES_7, _WEIGHTS_7)) * half
    return fine, float(np.linalg.norm(fine - coarse))


def integrate_parameter(
    integrand: Integrand,
    t0: float,
    t1: float,
    tol: float = 1e-9,
    max_panels: int = 4000,
    initial_panels: int = 4,
) -> QuadratureResult:
    """
    ``int_{t0}^{t1} integrand(t) dt`` for a smooth array-valued integrand.

    The tolerance is absolute for results of norm below one and relative above.

    Raises:
        QuadratureConvergenceError: If the panel cap is reached first.
    """
    edges = np.linspace(t0, t1, initial_panels + 1)
    heap: list[tuple[float, int, float, float, np.ndarray]] = []
    counter = 0
    for a, b in zip(edges[:-1], edges[1:]):
        value, error = _panel(integrand, a, b)
        heap.append((-error, counter, a, b, value))
        counter += 1
    heapq.heapify(heap)
    panels = len(heap)
    total = sum(item[4] for item in heap)
    error = sum(-item[0] for item in heap)
    while error > tol * max(1.0, float(np.linalg.norm(total))):
        if panels >= max_panels:
            raise QuadratureConvergenceError(panels, error, tol)
        worst_error, _, a, b, worst = heapq.heappop(heap)
        total = total - worst
        error += worst_error
        mid = 0.5 * (a + b)
        for lo, hi in ((a, mid), (mid, b)):
            value, panel_error = _panel(integrand, lo, hi)
            heapq.heappush(heap, (-panel_error, counter, lo, hi, value))
            total = total + value
            error += panel_error
            counter += 1
        panels += 1
    error = max(error, 0.0)
    return QuadratureResult(
        value=np.asarray(total), error=error, panels=panels, evaluations=22 * (counter)
    )


def check_poles_off_arc(F: FunctionLike, arc: OrientedArc, margin: float = POLE_MARGIN) -> None:
    """
    Raises:
        PoleOnPathError: If a pole of ``F`` lies on the arc, or the arc passes through infinity
            where ``F`` is unbounded.
    """
    F = as_block(F)
    for pole in F.poles():
        if arc.parameter_of(complex(pole), tol=margin) is not None:
            raise PoleOnPathError(complex(pole))
    if not F.is_bounded_at_infinity:
        through = arc.infinity_parameters(margin=0.0)
        if through or is_infinite(arc.start) or is_infinite(arc.end):
            raise PoleOnPathError(complex("inf"))


def integrate_kernel(
    F: FunctionLike,
    arc: OrientedArc,
    kernel: Callable[[complex], np.ndarray],
    measure: Measure = Measure.COMPLEX,
    tol: float = 1e-9,
    max_panels: int = 4000,
    initial_panels: int = 4,
) -> QuadratureResult:
    """
    ``int_arc F(sigma) (x) K(sigma) dm`` with ``dm`` either ``ds`` or ``d sigma``.

    The arc is integrated in its chart parameter, split where it passes through infinity so
    that no node lands there; ``d sigma`` follows the arc orientation. For a block ``F`` the
    integrand is the Kronecker product, i.e. block ``(i, j)`` is ``F_ij(sigma) K(sigma)``.

    Args:
        F (FunctionLike): Scalar or block rational function.
        arc (OrientedArc): Path of integration.
        kernel (Callable[[complex], np.ndarray]): Matrix-valued kernel.
        measure (Measure): Arclength or complex line element.
        tol (float): Requested accuracy of the whole integral.
        max_panels (int): Panel cap per piece.
        initial_panels (int): Uniform panels per piece before refinement.

    Returns:
        QuadratureResult: Value, summed error estimate and panel count.

    Raises:
        PoleOnPathError: A pole of ``F`` on the arc.
        QuadratureConvergenceError: No convergence within the panel cap.
    """
    F = as_block(F)
    check_poles_off_arc(F, arc)
    sign = 1.0 if measure is Measure.ARCLENGTH else float(arc.orientation)

    def integrand(t: float) -> np.ndarray:
        sigma = arc.point(t)
        weight = arc.speed(t) if measure is Measure.ARCLENGTH else arc.velocity(t)
        return np.kron(F(sigma), kernel(sigma)) * weight

    pieces = arc.split_at_infinity()
    value, error, panels, evaluations = 0.0, 0.0, 0, 0
    for piece in pieces:
        result = integrate_parameter(
            integrand, piece.t_start, piece.t_end, tol / len(pieces), max_panels, initial_panels
        )
        value = value + result.value
        error += result.error
        panels += result.panels
        evaluations += result.evaluations
    logger.debug(f"integrated over {len(pieces)} piece(s) with {panels} panels, error {error:.3g}")
    return QuadratureResult(value=sign * value, error=error, panels=panels, evaluations=evaluations)
