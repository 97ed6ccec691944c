import json
import math
import xml.etree.ElementTree as ET
from typing import Literal, Sequence

import numpy as np

from specsetlab.geometry.tessellation import build_tessellation
from specsetlab.types.geometry_types import GeneralizedDisk, OrientedArc, is_infinite
from specsetlab.types.tessellation_types import Tessellation
from specsetlab.utils.exceptions import InvalidValue

DEFAULT_VIEWPORT = (-3.0, -3.0, 3.0, 3.0)
_STYLE = {
    "boundary": {"stroke": "#1f3a93", "stroke-width": "0.02", "fill": "none"},
    "median": {"stroke": "#c0392b", "stroke-width": "0.015", "fill": "none"},
}


def export_json(tess: Tessellation) -> bytes:
    return (json.dumps(tess.asdict(), sort_keys=True, indent=2) + "\n").encode()


def tessellation_from_json(payload: bytes | str, **kwargs) -> Tessellation:
    """Rebuild a tessellation from its JSON export (only the disks are read)."""
    data = json.loads(payload)
    return build_tessellation([GeneralizedDisk.from_dict(d) for d in data["disks"]], **kwargs)


def _polyline(arc: OrientedArc, viewport: Sequence[float], samples: int) -> str:
    """Path data of the arc clipped to a slightly enlarged viewport; y axis flipped."""
    x0, y0, x1, y1 = viewport
    pad = 0.05 * max(x1 - x0, y1 - y0)
    commands: list[str] = []
    pen_down = False
    for t in np.linspace(arc.t_start, arc.t_end, samples):
        z = arc.point(float(t))
        visible = (
            not is_infinite(z)
            and x0 - pad <= z.real <= x1 + pad
            and y0 - pad <= z.imag <= y1 + pad
        )
        if not visible:
            pen_down = False
            continue
        commands.append(f"{'L' if pen_down else 'M'}{z.real:.6f},{-z.imag:.6f}")
        pen_down = True
    if arc.is_closed and commands and pen_down and commands[0].startswith("M"):
        commands.append("Z")
    return " ".join(commands)


def export_svg(
    tess: Tessellation,
    viewport: Sequence[float] = DEFAULT_VIEWPORT,
    samples_per_arc: int = 256,
) -> bytes:
    """SVG 1.1 drawing: one path per boundary piece and per median arc."""
    x0, y0, x1, y1 = viewport
    if not (x1 > x0 and y1 > y0):
        raise InvalidValue("viewport", viewport, "expected x0 < x1 and y0 < y1")
    width, height = x1 - x0, y1 - y0
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "viewBox": f"{x0:.6f} {-y1:.6f} {width:.6f} {height:.6f}",
            "width": f"{math.ceil(100 * width)}",
            "height": f"{math.ceil(100 * height)}",
        },
    )
    groups = {name: ET.SubElement(root, "g", {"class": name, **style}) for name, style in _STYLE.items()}
    for piece in tess.boundary_arcs:
        ET.SubElement(
            groups["boundary"],
            "path",
            {"d": _polyline(piece.arc, viewport, samples_per_arc), "data-j": str(piece.index)},
        )
    for piece in tess.median_arcs:
        ET.SubElement(
            groups["median"],
            "path",
            {
                "d": _polyline(piece.arc, viewport, samples_per_arc),
                "data-j": str(piece.j),
                "data-k": str(piece.k),
            },
        )
    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def export_geometry(
    tess: Tessellation,
    format: Literal["json", "svg"] = "json",
    viewport: Sequence[float] = DEFAULT_VIEWPORT,
    samples_per_arc: int = 256,
) -> bytes:
    """Deterministic JSON or SVG rendering of a tessellation."""
    match format:
        case "json":
            return export_json(tess)
        case "svg":
            return export_svg(tess, viewport, samples_per_arc)
        case _:
            raise InvalidValue("format", format, "expected 'json' or 'svg'")
