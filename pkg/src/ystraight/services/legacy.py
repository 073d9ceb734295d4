"""Flat visibility representations and the left-to-right placement heuristic.

The heuristic places vertices one at a time, each to the right of every
feature already on its row and far enough right that its placed neighbours
can see it.  It keeps rows but not row orders; :func:`order_exhaustion`
demonstrates on :func:`gen_legacy_counterexample` that no processing order
fixes that.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ystraight.models.drawing import (
    FlatVisibilityRep,
    FVREdge,
    PolylineDrawing,
    VertexBar,
    VertexId,
    edge_key,
)
from ystraight.models.errors import InvalidFVR
from ystraight.models.geometry import Point, Segment
from ystraight.services.geom import row_crossing
from ystraight.services.rowtrace import row_trace, trace_difference
from ystraight.services.straighten import straighten

logger = logging.getLogger(__name__)


def _mid(bar: VertexBar) -> Point:
    return Point((bar.xl + bar.xr) / 2, bar.y)


def fvr_to_polyline(f: FlatVisibilityRep) -> PolylineDrawing:
    """Poly-line drawing with the same rows and row orders as ``f``.

    Vertices go to the midpoints of their bars.  A vertical edge leaves its
    lower bar diagonally to its column one row up, runs along the column and
    enters the upper bar diagonally from one row below it.
    """
    pos = {v: _mid(bar) for v, bar in f.vertices.items()}
    edges: list[tuple[VertexId, VertexId, list[Point]]] = []
    for e in f.edges:
        bu, bv = f.vertices[e.u], f.vertices[e.v]
        if e.orient == "h":
            if bu.y != bv.y:
                raise InvalidFVR(f"horizontal edge {(e.u, e.v)} joins rows {bu.y} and {bv.y}")
            edges.append((e.u, e.v, []))
            continue
        if bu.y == bv.y:
            raise InvalidFVR(f"vertical edge {(e.u, e.v)} on a single row")
        lo, hi = (e.u, e.v) if bu.y < bv.y else (e.v, e.u)
        ylo, yhi = f.vertices[lo].y, f.vertices[hi].y
        for name in (lo, hi):
            bar = f.vertices[name]
            if not bar.xl <= e.at <= bar.xr:
                raise InvalidFVR(f"edge {(e.u, e.v)} misses the bar of {name!r}")
        inner: list[Point] = []
        if yhi - ylo >= 2:
            inner.append(Point(e.at, ylo + 1))
            if yhi - ylo >= 3:
                inner.append(Point(e.at, yhi - 1))
        edges.append((lo, hi, inner))
    return PolylineDrawing.build(pos, edges)


# -- placement heuristic -------------------------------------------------------


@dataclass
class _Placed:
    pos: dict[VertexId, Point] = field(default_factory=dict)
    edges: list[tuple[VertexId, VertexId]] = field(default_factory=list)

    def segment(self, a: VertexId, b: VertexId) -> Segment:
        return Segment(self.pos[a], self.pos[b])


def _row_bound(placed: _Placed, row: Fraction) -> int | None:
    xs = [p.x for p in placed.pos.values() if p.y == row]
    for a, b in placed.edges:
        seg = placed.segment(a, b)
        if seg.is_horizontal:
            if seg.a.y == row:
                xs.append(seg.xmax)
            continue
        hit = row_crossing(seg, row)
        if hit is not None:
            xs.append(hit.x)
    return math.floor(max(xs)) + 1 if xs else None


def _project(src: Point, through: Point, row: Fraction) -> Fraction:
    return src.x + (through.x - src.x) * (row - src.y) / (through.y - src.y)


def _clip(seg: Segment, y0: Fraction, y1: Fraction) -> list[Point]:
    """Endpoints of the part of ``seg`` with ``y0 <= y <= y1``."""
    if seg.ymax < y0 or seg.ymin > y1:
        return []
    if seg.is_horizontal:
        return [seg.a, seg.b]
    out: list[Point] = []
    for p in seg:
        if y0 <= p.y <= y1:
            out.append(p)
    for row in (y0, y1):
        hit = row_crossing(seg, row)
        if hit is not None and hit not in out:
            out.append(hit)
    return out


def _sight_bound(placed: _Placed, g: VertexId, row: Fraction) -> Fraction | None:
    """Abscissa beyond which ``g`` sees every point of ``row``.

    Blockers are placed vertices other than ``g`` and placed edges not
    incident to ``g`` inside the strip between the two rows.  A blocker
    point on ``g``'s own row to its left never blocks; one to its right is
    skipped with a warning since the heuristic never leaves features there.
    """
    src = placed.pos[g]
    y0, y1 = min(src.y, row), max(src.y, row)
    points = [p for v, p in placed.pos.items() if v != g and y0 <= p.y <= y1]
    for a, b in placed.edges:
        if g in (a, b):
            continue
        points.extend(_clip(placed.segment(a, b), y0, y1))
    best: Fraction | None = None
    for p in points:
        if p.y == src.y:
            if p.x > src.x:
                logger.warning("blocker %s right of %r on its own row ignored", p, g)
            continue
        x = _project(src, p, row)
        best = x if best is None else max(best, x)
    return best


def legacy_straighten(
    f: FlatVisibilityRep, order: Sequence[VertexId] | None = None
) -> PolylineDrawing:
    """Straight-line drawing produced by the left-to-right placement heuristic.

    The default order sorts vertices by the left end of their bars, ties by
    id.  The result keeps every vertex on its row but is not validated and
    may well cross itself.
    """
    if order is None:
        order = sorted(f.vertices, key=lambda v: (f.vertices[v].xl, v))
    elif set(order) != set(f.vertices) or len(order) != len(f.vertices):
        raise InvalidFVR("processing order must list every vertex exactly once")

    nbrs: dict[VertexId, set[VertexId]] = {v: set() for v in f.vertices}
    for e in f.edges:
        nbrs[e.u].add(e.v)
        nbrs[e.v].add(e.u)

    placed = _Placed()
    for v in order:
        row = f.vertices[v].y
        preds = sorted(nbrs[v] & placed.pos.keys())
        bounds: list[int] = []
        rb = _row_bound(placed, row)
        if rb is not None:
            bounds.append(rb)
        for g in preds:
            if placed.pos[g].y == row:
                continue
            xg = _sight_bound(placed, g, row)
            if xg is not None:
                bounds.append(math.floor(xg) + 1)
        x = max(bounds) if bounds else 1
        placed.pos[v] = Point(Fraction(x), row)
        placed.edges.extend(edge_key(v, g) for g in preds)
        logger.debug("placed %r at x=%d with %d predecessors", v, x, len(preds))

    return PolylineDrawing(dict(placed.pos), {k: () for k in placed.edges})


def straighten_fvr(f: FlatVisibilityRep) -> PolylineDrawing:
    """Straight-line drawing of ``f`` that keeps its rows and row orders."""
    return straighten(fvr_to_polyline(f))


def gen_legacy_counterexample() -> FlatVisibilityRep:
    """Six-vertex representation on which the heuristic breaks a row order.

    ``y1``, ``y2`` and ``w`` sit inside the triangle ``x, u1, u2``; the
    heuristic puts ``x`` and ``w`` next to each other on row 3, and the
    horizontal edge between them then crosses ``(u1, u2)``.
    """
    F = Fraction
    bars = {
        "u1": VertexBar(F(0), F(30), F(5)),
        "x": VertexBar(F(1), F(3), F(3)),
        "u2": VertexBar(F(2), F(31), F(1)),
        "y1": VertexBar(F(10), F(16), F(4)),
        "y2": VertexBar(F(10), F(16), F(2)),
        "w": VertexBar(F(12), F(13), F(3)),
    }
    edges = (
        FVREdge("x", "u1", "v", F(3, 2)),
        FVREdge("x", "u2", "v", F(5, 2)),
        FVREdge("u1", "u2", "v", F(29)),
        FVREdge("y1", "y2", "v", F(16)),
        FVREdge("y1", "w", "v", F(25, 2)),
        FVREdge("y2", "w", "v", F(127, 10)),
        FVREdge("x", "w", "h", F(3)),
        FVREdge("y1", "u1", "v", F(12)),
        FVREdge("y2", "u2", "v", F(12)),
    )
    return FlatVisibilityRep(bars, edges)


@dataclass
class OrderReport:
    tried: int = 0
    preserving: list[tuple[VertexId, ...]] = field(default_factory=list)
    # first row on which the default order goes wrong
    first_bad_row: int | None = None


def order_exhaustion(
    f: FlatVisibilityRep, names: Iterable[VertexId] | None = None
) -> OrderReport:
    """Run the heuristic under every processing order of ``names``.

    Vertices outside ``names`` keep their default relative order and go
    first.  An order is preserving when the output's row trace equals the
    trace of :func:`fvr_to_polyline`.
    """
    target = row_trace(fvr_to_polyline(f))
    default = sorted(f.vertices, key=lambda v: (f.vertices[v].xl, v))
    chosen = list(default if names is None else names)
    fixed = [v for v in default if v not in chosen]

    report = OrderReport()
    report.first_bad_row = trace_difference(row_trace(legacy_straighten(f)), target)
    for perm in itertools.permutations(chosen):
        order = (*fixed, *perm)
        report.tried += 1
        if trace_difference(row_trace(legacy_straighten(f, order)), target) is None:
            report.preserving.append(order)
    logger.info("%d orders tried, %d preserve the row trace", report.tried, len(report.preserving))
    return report
