"""Covering export: JSON, CSV and SVG with deterministic byte output.

Center coordinates are emitted as exact dyadic strings after rounding onto
the ``2**-precision`` grid (coordinates already on the grid pass through
unchanged).  The JSON and CSV forms round-trip bit-exactly; the SVG draws
one axis-aligned square (a max-norm ball) per center.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .covers import TBSet
from .dyadic import Dyadic, pow2
from .space import approx_point

SVG_CANVAS = 1024  # world viewport maps onto a square canvas, y axis flipped


def covering_record(A: TBSet, level: int, precision: int) -> dict:
    """The level-``n`` covering as a plain record with string centers."""
    if precision < level:
        raise ValueError("precision must be at least the level")
    centers = []
    for pt in A.covering(level):
        coords = approx_point(pt, precision)
        centers.append([c.compact_str() for c in coords])
    return {
        "level": level,
        "radius_exponent": -level,
        "centers": centers,
        "dimension": A.dimension,
    }


def record_to_json(record: dict) -> str:
    ordered = {
        "level": record["level"],
        "radius_exponent": record["radius_exponent"],
        "centers": record["centers"],
        "dimension": record["dimension"],
    }
    return json.dumps(ordered, separators=(",", ":")) + "\n"


def record_from_json(text: str) -> dict:
    record = json.loads(text)
    for key in ("level", "radius_exponent", "centers", "dimension"):
        if key not in record:
            raise ValueError(f"covering record missing {key!r}")
    return record


def record_to_csv(record: dict) -> str:
    lines = []
    for center in record["centers"]:
        lines.append(",".join([str(record["level"]), str(record["radius_exponent"])] + list(center)))
    return "\n".join(lines) + ("\n" if lines else "")


def record_from_csv(text: str) -> dict:
    centers = []
    level = None
    radius_exponent = None
    dimension = None
    for line in text.splitlines():
        if not line:
            continue
        parts = line.split(",")
        level = int(parts[0])
        radius_exponent = int(parts[1])
        centers.append(parts[2:])
        dimension = len(parts) - 2
    return {
        "level": level,
        "radius_exponent": radius_exponent,
        "centers": centers,
        "dimension": dimension,
    }


def record_centers_dyadic(record: dict) -> list[tuple[Dyadic, ...]]:
    return [tuple(Dyadic.parse(c) for c in row) for row in record["centers"]]


def default_viewport(record: dict) -> tuple[Dyadic, Dyadic, Dyadic, Dyadic]:
    """Bounding box of the drawn squares, inflated by one radius."""
    centers = record_centers_dyadic(record)
    if not centers:
        one = Dyadic(1)
        return (-one, -one, one, one)
    radius = pow2(record["radius_exponent"])
    xs = [c[0] for c in centers]
    ys = [c[1] for c in centers]
    pad = radius + radius
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _fmt_px(v: Fraction) -> str:
    # fixed three decimals, deterministic banker's rounding
    scaled = round(v * 1000)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 1000}.{scaled % 1000:03d}"


def record_to_svg(record: dict, viewport=None) -> str:
    if record["dimension"] != 2:
        raise ValueError("SVG output requires dimension 2")
    if viewport is None:
        viewport = default_viewport(record)
    x0, y0, x1, y1 = (v.as_fraction() for v in viewport)
    if not (x0 < x1 and y0 < y1):
        raise ValueError("degenerate viewport")
    radius = pow2(record["radius_exponent"]).as_fraction()
    side_x = 2 * radius / (x1 - x0) * SVG_CANVAS
    side_y = 2 * radius / (y1 - y0) * SVG_CANVAS
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_CANVAS}" '
        f'height="{SVG_CANVAS}" viewBox="0 0 {SVG_CANVAS} {SVG_CANVAS}">',
        '<g fill="#1f77b4" fill-opacity="0.55" stroke="#0b3d5c" stroke-width="0.4">',
    ]
    for row in record_centers_dyadic(record):
        cx, cy = row[0].as_fraction(), row[1].as_fraction()
        px = (cx - radius - x0) / (x1 - x0) * SVG_CANVAS
        py = (y1 - (cy + radius)) / (y1 - y0) * SVG_CANVAS
        lines.append(
            f'<rect x="{_fmt_px(px)}" y="{_fmt_px(py)}" '
            f'width="{_fmt_px(side_x)}" height="{_fmt_px(side_y)}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".certoset-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
