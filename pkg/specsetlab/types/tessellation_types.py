from dataclasses import dataclass

from specsetlab.types.geometry_types import GeneralizedDisk, OrientedArc, complex_asdict


@dataclass(frozen=True)
class BoundaryArc:
    """Piece of ``X & boundary(D_index)``, oriented with ``X`` on the left."""

    index: int
    arc: OrientedArc

    def asdict(self) -> dict:
        return {"j": self.index, **self.arc.asdict()}


@dataclass(frozen=True)
class MedianArc:
    """
    Piece of the median circline of ``(D_j, D_k)``, ``j < k``, lying in ``X_j & X_k``.

    Traversed with ``X_j`` on the right; read as part of the path for ``D_k`` it is reversed.
    """

    j: int
    k: int
    arc: OrientedArc

    def asdict(self) -> dict:
        return {"j": self.j, "k": self.k, **self.arc.asdict()}


@dataclass(frozen=True)
class CellDescriptor:
    """Cell ``X_index``: indices into the tessellation's boundary and median arc lists."""

    index: int
    boundary_arcs: tuple[int, ...]
    median_arcs: tuple[int, ...]

    def asdict(self) -> dict:
        return {
            "j": self.index,
            "boundary_arcs": list(self.boundary_arcs),
            "median_arcs": list(self.median_arcs),
        }


@dataclass(frozen=True)
class Tessellation:
    disks: tuple[GeneralizedDisk, ...]
    boundary_arcs: tuple[BoundaryArc, ...]
    median_arcs: tuple[MedianArc, ...]
    cells: tuple[CellDescriptor, ...]
    vertices: tuple[complex, ...] = ()

    @property
    def size(self) -> int:
        return len(self.disks)

    def asdict(self) -> dict:
        return {
            "disks": [D.asdict() for D in self.disks],
            "boundary": [piece.asdict() for piece in self.boundary_arcs],
            "arcs": [piece.asdict() for piece in self.median_arcs],
            "cells": [cell.asdict() for cell in self.cells],
            "vertices": [complex_asdict(v) for v in self.vertices],
        }
