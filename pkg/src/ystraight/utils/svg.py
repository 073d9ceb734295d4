from __future__ import annotations

import logging
from pathlib import Path

import svgwrite

from ystraight.models.drawing import PolylineDrawing
from ystraight.models.errors import NonIntegral
from ystraight.services.validate import height, width
from ystraight.utils.config import get_settings

logger = logging.getLogger(__name__)

MARGIN = 1.0
VERTEX_RADIUS = 0.15


def render_svg(d: PolylineDrawing, scale: float | None = None) -> svgwrite.Drawing:
    """SVG picture of ``d`` with row grid lines; larger rows are drawn higher."""
    scale = scale or get_settings().svg_scale
    pts = [*d.pos.values(), *(p for b in d.bends.values() for p in b)]
    xs = [float(p.x) for p in pts] or [0.0]
    ys = [float(p.y) for p in pts] or [0.0]
    x0, x1 = min(xs) - MARGIN, max(xs) + MARGIN
    y0, y1 = min(ys) - MARGIN, max(ys) + MARGIN

    def at(x: float, y: float) -> tuple[float, float]:
        return ((x - x0) * scale, (y1 - y) * scale)

    drawing = svgwrite.Drawing(
        profile="full",
        size=((x1 - x0) * scale, (y1 - y0) * scale),
    )
    try:
        drawing.set_desc(title="drawing", desc=f"width={width(d)} height={height(d)}")
    except NonIntegral:
        drawing.set_desc(title="drawing", desc="off-grid drawing")

    for row in range(int(y0) + 1, int(y1) + 1):
        drawing.add(
            drawing.line(
                at(x0, row), at(x1, row), stroke=svgwrite.rgb(80, 80, 80, "%"), stroke_width=1
            )
        )
    for key, bends in sorted(d.bends.items()):
        poly = [at(float(p.x), float(p.y)) for p in d.polyline(*key)]
        drawing.add(drawing.polyline(poly, fill="none", stroke="black", stroke_width=2))
        for p in bends:
            drawing.add(drawing.circle(at(float(p.x), float(p.y)), r=2, fill="gray"))
    for v, p in sorted(d.pos.items()):
        c = at(float(p.x), float(p.y))
        drawing.add(drawing.circle(c, r=VERTEX_RADIUS * scale, fill="white", stroke="black"))
        drawing.add(drawing.text(v, insert=(c[0] + 4, c[1] - 4), font_size=max(8, scale / 4)))
    return drawing


def write_svg(d: PolylineDrawing, path: Path, scale: float | None = None) -> None:
    render_svg(d, scale).saveas(str(path))
    logger.info("wrote %s", path)
