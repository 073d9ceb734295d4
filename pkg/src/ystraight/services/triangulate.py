"""Augment a y-monotone poly-line drawing to a drawing of a triangulated graph.

The pipeline is ``add_bounding_triangle -> make_short -> make_strict ->
ensure_vertical_neighbors -> triangulate_faces``.  Original vertices never
move and every added vertex lives on one of two new rows, so the whole
augmentation can be stripped again afterwards.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ystraight.models.drawing import EdgeKey, PolylineDrawing, VertexId, edge_key
from ystraight.models.errors import NonIntegral, PreconditionViolated, RayHitsNothing
from ystraight.models.geometry import Point, Segment
from ystraight.services.geom import row_crossing, signed_area2
from ystraight.services.rowtrace import row_features
from ystraight.services.validate import (
    directed_view,
    face_polygon,
    faces,
    is_y_monotone,
    mirror_y,
)

logger = logging.getLogger(__name__)

AUG_PREFIX = "_aug_"


@dataclass
class Augmentation:
    """Everything the pipeline added; enough to undo it."""

    vertices: set[VertexId] = field(default_factory=set)
    edges: set[EdgeKey] = field(default_factory=set)
    rows: tuple[int, ...] = ()
    outer_face: tuple[VertexId, ...] | None = None

    def strip(self, d: PolylineDrawing) -> PolylineDrawing:
        out = d.without_vertices(self.vertices).without_edges(self.edges)
        return PolylineDrawing(out.pos, out.bends, self.outer_face)


# -- bounding triangle ------------------------------------------------------


def add_bounding_triangle(d: PolylineDrawing) -> tuple[PolylineDrawing, Augmentation]:
    pts = list(d.pos.values()) + [p for b in d.bends.values() for p in b]
    if pts:
        xmin, xmax = min(p.x for p in pts), max(p.x for p in pts)
        ymin, ymax = min(p.y for p in pts), max(p.y for p in pts)
    else:
        xmin = xmax = ymin = ymax = Fraction(0)

    bottom, left, right = (f"{AUG_PREFIX}B", f"{AUG_PREFIX}T1", f"{AUG_PREFIX}T2")
    clash = {bottom, left, right} & set(d.pos)
    if clash:
        raise PreconditionViolated("reserved vertex ids", ", ".join(sorted(clash)))

    pos = dict(d.pos)
    pos[bottom] = Point(xmin - 1, ymin - 1)
    pos[left] = Point(xmin - 1, ymax + 1)
    pos[right] = Point(xmax + 1, ymax + 1)
    out = PolylineDrawing(pos, dict(d.bends), (bottom, right, left))
    out = out.with_edge(bottom, left).with_edge(left, right)
    out = out.with_edge(bottom, right, [Point(xmax + 1, ymin)])

    aug = Augmentation(
        vertices={bottom, left, right},
        edges={edge_key(bottom, left), edge_key(left, right), edge_key(bottom, right)},
        rows=(int(ymin - 1), int(ymax + 1)),
        outer_face=d.outer_face,
    )
    logger.debug("bounding triangle rows %s", aug.rows)
    return out, aug


# -- short and strict -------------------------------------------------------


def _shorten(pts: tuple[Point, ...]) -> list[Point]:
    out = [pts[0]]
    for p, r in zip(pts, pts[1:]):
        if abs(r.y - p.y) > 1:
            step = 1 if r.y > p.y else -1
            for row in range(int(p.y) + step, int(r.y), step):
                hit = row_crossing(Segment(p, r), row)
                assert hit is not None
                out.append(hit)
        out.append(r)
    return out


def make_short(d: PolylineDrawing) -> PolylineDrawing:
    """Insert a bend wherever an edge crosses an integer row."""
    for key, bends in d.bends.items():
        if any(p.y.denominator != 1 for p in (*bends, d.pos[key[0]], d.pos[key[1]])):
            raise NonIntegral(f"edge {key} has a point off the integer rows")
    bends_out: dict[EdgeKey, tuple[Point, ...]] = {}
    for key in d.bends:
        bends_out[key] = tuple(_shorten(d.polyline(*key))[1:-1])
    return PolylineDrawing(d.pos, bends_out, d.outer_face)


def _strict_points(pts: list[Point]) -> list[Point]:
    if all(p.y == pts[0].y for p in pts):
        return [pts[0], pts[-1]]
    changed = True
    while changed:
        changed = False
        for i in range(1, len(pts) - 1):
            if pts[i - 1].y == pts[i].y or pts[i].y == pts[i + 1].y:
                del pts[i]
                changed = True
                break
    return pts


def make_strict(d: PolylineDrawing) -> PolylineDrawing:
    """Shortcut every bend that joins a horizontal and a non-horizontal segment."""
    bends_out = {
        key: tuple(_strict_points(list(d.polyline(*key)))[1:-1]) for key in d.bends
    }
    return PolylineDrawing(d.pos, bends_out, d.outer_face)


# -- vertical neighbours ----------------------------------------------------


@dataclass(frozen=True)
class _RayHit:
    y: Fraction
    vertex: VertexId | None = None
    edge: EdgeKey | None = None


def _cast_up(d: PolylineDrawing, v: VertexId) -> _RayHit:
    p = d.pos[v]
    best: _RayHit | None = None

    def offer(hit: _RayHit) -> None:
        nonlocal best
        if best is None or hit.y < best.y:
            best = hit
        elif hit.y == best.y and hit.vertex is not None and best.vertex is None:
            # a vertex hit beats the edge segments ending at it
            best = hit

    for u, pu in d.pos.items():
        if u != v and pu.x == p.x and pu.y > p.y:
            offer(_RayHit(pu.y, vertex=u))
    for key in d.bends:
        for s in d.segments(key):
            if not (s.xmin <= p.x <= s.xmax) or s.ymax <= p.y:
                continue
            if s.a.x == s.b.x:
                y = s.ymin
            else:
                t = (p.x - s.a.x) / (s.b.x - s.a.x)
                y = s.a.y + t * (s.b.y - s.a.y)
            if y > p.y:
                offer(_RayHit(y, edge=key))
    if best is None:
        raise RayHitsNothing(f"upward ray from {v!r} leaves the drawing")
    return best


def _point_at_row(d: PolylineDrawing, key: EdgeKey, row: int) -> Fraction:
    for pt in d.polyline(*key):
        if pt.y == row:
            return pt.x
    raise PreconditionViolated("short drawing", f"edge {key} has no point on row {row}")


def _beside(d: PolylineDrawing, x: Fraction, row: int, side: int) -> Fraction:
    if side > 0:
        near = [f.x_lo for f in row_features(d, row) if f.x_lo > x]
        gap = (min(near) - x) / 2 if near else Fraction(1)
    else:
        near = [f.x_hi for f in row_features(d, row) if f.x_hi < x]
        gap = (x - max(near)) / 2 if near else Fraction(1)
    return x + side * gap


def _route_up(d: PolylineDrawing, v: VertexId) -> tuple[VertexId, list[Point]]:
    """Target and bends of a new edge from ``v`` to a vertex above it."""
    p = d.pos[v]
    hit = _cast_up(d, v)
    if hit.vertex is not None:
        return hit.vertex, []
    assert hit.edge is not None
    key = hit.edge
    a, b = key
    ya, yb = d.pos[a].y, d.pos[b].y
    w = a if ya > yb or (ya == yb and a < b) else b

    r = math.ceil(hit.y) - 1
    bends: list[Point] = []
    if r > p.y:
        bends.append(Point(p.x, Fraction(r)))
    top = int(d.pos[w].y)
    if r + 1 < top:
        side = 1 if p.x > _point_at_row(d, key, r) else -1
        for k in range(r + 1, top):
            bends.append(Point(_beside(d, _point_at_row(d, key, k), k, side), Fraction(k)))
    return w, bends


def _upward_pass(d: PolylineDrawing, inner: list[VertexId]) -> tuple[PolylineDrawing, set[EdgeKey]]:
    added: set[EdgeKey] = set()
    for v in inner:
        view = directed_view(d)
        if view.succ[v]:
            continue
        w, bends = _route_up(d, v)
        logger.debug("vertical neighbour %s -> %s via %d bend(s)", v, w, len(bends))
        d = make_short(d.with_edge(v, w, bends))
        added.add(edge_key(v, w))
    return d, added


def ensure_vertical_neighbors(d: PolylineDrawing) -> tuple[PolylineDrawing, set[EdgeKey]]:
    """Give every inner vertex a neighbour strictly above and one strictly below."""
    outer = set(d.outer_face or ())
    inner = sorted(v for v in d.pos if v not in outer)
    d, up = _upward_pass(d, inner)
    m, down = _upward_pass(mirror_y(d), inner)
    d = make_short(mirror_y(m))
    return d, up | down


# -- faces ------------------------------------------------------------------


def _row_section(poly: list[Point], row: int) -> tuple[Fraction, Fraction]:
    xs: set[Fraction] = set()
    for i, p in enumerate(poly):
        r = poly[(i + 1) % len(poly)]
        hit = row_crossing(Segment(p, r), row)
        if hit is not None:
            xs.add(hit.x)
    if len(xs) != 2:
        raise PreconditionViolated("y-monotone face", f"{len(xs)} boundary point(s) on row {row}")
    lo, hi = sorted(xs)
    return lo, hi


def _chord(d: PolylineDrawing, face: tuple[VertexId, ...]) -> tuple[VertexId, VertexId] | None:
    k = len(face)
    lowest = min(range(k), key=lambda i: (d.pos[face[i]].y, face[i]))
    v = face[lowest]
    for j in range(2, k - 1):
        w = face[(lowest + j) % k]
        if not d.has_edge(v, w):
            return v, w
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if not d.has_edge(face[i], face[j]):
                return face[i], face[j]
    return None


def triangulate_faces(d: PolylineDrawing) -> tuple[PolylineDrawing, set[EdgeKey]]:
    added: set[EdgeKey] = set()
    while True:
        todo = None
        for f in faces(d):
            if len(f) > 3 and signed_area2(face_polygon(d, f)) > 0:
                todo = f
                break
        if todo is None:
            return d, added
        if len(set(todo)) != len(todo):
            raise PreconditionViolated("2-connected", f"face {todo} repeats a vertex")
        pair = _chord(d, todo)
        if pair is None:
            raise PreconditionViolated("chordable face", f"face {todo} has no missing chord")
        v, w = sorted(pair, key=lambda u: d.pos[u].y)
        poly = face_polygon(d, todo)
        bends: list[Point] = []
        for row in range(int(d.pos[v].y) + 1, int(d.pos[w].y)):
            lo, hi = _row_section(poly, row)
            bends.append(Point((lo + hi) / 2, Fraction(row)))
        d = d.with_edge(v, w, bends)
        added.add(edge_key(v, w))
        logger.debug("chord %s-%s in face of size %d", v, w, len(todo))


def triangulate_drawing(d: PolylineDrawing) -> tuple[PolylineDrawing, Augmentation]:
    if not is_y_monotone(d):
        raise PreconditionViolated("y-monotone", "input has a non-monotone edge")
    out, aug = add_bounding_triangle(d)
    out = make_strict(make_short(out))
    out, vertical = ensure_vertical_neighbors(out)
    out, chords = triangulate_faces(out)
    aug.edges |= vertical | chords
    logger.info(
        "triangulated: %d vertices, %d edges (%d added)",
        len(out.pos),
        len(out.bends),
        len(aug.edges),
    )
    return out, aug
