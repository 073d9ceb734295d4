"""Validators and structural queries over poly-line drawings."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ystraight.models.drawing import EdgeKey, PolylineDrawing, VertexId
from ystraight.models.errors import NonIntegral, NotTriangulated
from ystraight.models.geometry import Overlap, Point, Segment
from ystraight.services.geom import direction_key, point_on_segment, seg_intersect, signed_area2

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Issue:
    kind: str
    owners: tuple[str, ...]
    detail: str = ""


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    @property
    def planar(self) -> bool:
        return not any(i.kind in _PLANARITY_KINDS for i in self.issues)

    def kinds(self) -> set[str]:
        return {i.kind for i in self.issues}


_PLANARITY_KINDS = {
    "crossing",
    "overlap",
    "self_intersection",
    "vertex_on_edge",
    "coincident_vertices",
}


def _label(key: EdgeKey) -> str:
    return f"{key[0]}-{key[1]}"


def validate(d: PolylineDrawing) -> ValidationReport:
    """Exact all-pairs check of the drawing invariants.

    Pairs are pruned by x-extent only; the outcome is independent of the order
    in which vertices and edges are stored.
    """
    report = ValidationReport()
    issues = report.issues

    seen: dict[Point, VertexId] = {}
    for v in sorted(d.pos):
        p = d.pos[v]
        if p.y.denominator != 1:
            issues.append(Issue("non_integral_row", (v,), f"y={p.y}"))
        if p in seen:
            issues.append(Issue("coincident_vertices", (seen[p], v), str(p)))
        else:
            seen[p] = v

    segs: list[tuple[Segment, EdgeKey, int]] = []
    for key in sorted(d.bends):
        pts = d.polyline(*key)
        for b in d.bends[key]:
            if b.y.denominator != 1:
                issues.append(Issue("non_integral_row", (_label(key),), f"bend y={b.y}"))
        for i, (p, r) in enumerate(zip(pts, pts[1:])):
            if p == r:
                issues.append(Issue("duplicate_point", (_label(key),), f"at index {i}"))
                continue
            segs.append((Segment(p, r), key, i))

    last_index = {key: len(d.bends[key]) for key in d.bends}

    for v in sorted(d.pos):
        p = d.pos[v]
        for s, key, i in segs:
            if not point_on_segment(p, s):
                continue
            if v == key[0] and i == 0 and s.a == p:
                continue
            if v == key[1] and i == last_index[key] and s.b == p:
                continue
            issues.append(Issue("vertex_on_edge", (v, _label(key)), str(p)))

    order = sorted(range(len(segs)), key=lambda k: segs[k][0].xmin)
    for oi, i in enumerate(order):
        s, ke, ie = segs[i]
        for j in order[oi + 1 :]:
            t, kf, jf = segs[j]
            if t.xmin > s.xmax:
                break
            if t.ymin > s.ymax or s.ymin > t.ymax:
                continue
            hit = seg_intersect(s, t)
            if hit is None:
                continue
            issue = _classify(d, s, ke, ie, t, kf, jf, hit)
            if issue is not None:
                issues.append(issue)

    if issues:
        logger.debug("validate: %d issue(s), first: %s", len(issues), issues[0])
    return report


def _classify(
    d: PolylineDrawing,
    s: Segment,
    ke: EdgeKey,
    ie: int,
    t: Segment,
    kf: EdgeKey,
    jf: int,
    hit: Point | Overlap,
) -> Issue | None:
    owners = tuple(sorted((_label(ke), _label(kf))))
    if ke == kf:
        if abs(ie - jf) == 1 and isinstance(hit, Point):
            shared = s.b if ie < jf else s.a
            if hit == shared:
                return None
        return Issue("self_intersection", (_label(ke),), str(hit))
    if isinstance(hit, Overlap):
        return Issue("overlap", owners, str(hit.segment))
    common = set(ke) & set(kf)
    if any(hit == d.pos[w] for w in common):
        return None
    return Issue("crossing", owners, str(hit))


def is_y_monotone(d: PolylineDrawing) -> bool:
    for key in d.bends:
        ys = [p.y for p in d.polyline(*key)]
        up = all(a <= b for a, b in zip(ys, ys[1:]))
        down = all(a >= b for a, b in zip(ys, ys[1:]))
        if not (up or down):
            return False
    return True


@dataclass(frozen=True)
class DirectedView:
    """Orientation ``v -> w`` iff ``y(v) < y(w)``; horizontal edges count both ways."""

    succ: Mapping[VertexId, frozenset[VertexId]]
    pred: Mapping[VertexId, frozenset[VertexId]]
    horizontal: Mapping[VertexId, frozenset[VertexId]]

    def indeg(self, v: VertexId) -> int:
        return len(self.pred[v]) + len(self.horizontal[v])

    def outdeg(self, v: VertexId) -> int:
        return len(self.succ[v]) + len(self.horizontal[v])


def directed_view(d: PolylineDrawing) -> DirectedView:
    succ: dict[VertexId, set[VertexId]] = {v: set() for v in d.pos}
    pred: dict[VertexId, set[VertexId]] = {v: set() for v in d.pos}
    horiz: dict[VertexId, set[VertexId]] = {v: set() for v in d.pos}
    for a, b in d.bends:
        ya, yb = d.pos[a].y, d.pos[b].y
        if ya < yb:
            succ[a].add(b)
            pred[b].add(a)
        elif yb < ya:
            succ[b].add(a)
            pred[a].add(b)
        else:
            horiz[a].add(b)
            horiz[b].add(a)
    freeze = lambda m: {k: frozenset(s) for k, s in m.items()}  # noqa: E731
    return DirectedView(freeze(succ), freeze(pred), freeze(horiz))


def rotation_system(d: PolylineDrawing) -> dict[VertexId, tuple[VertexId, ...]]:
    """Neighbours of every vertex in counter-clockwise order of their first segment."""
    rot: dict[VertexId, tuple[VertexId, ...]] = {}
    for v in d.pos:
        p = d.pos[v]

        def first_dir(w: VertexId, v: VertexId = v, p: Point = p) -> tuple[Fraction, Fraction]:
            q = d.polyline(v, w)[1]
            return (q.x - p.x, q.y - p.y)

        rot[v] = tuple(sorted(d.neighbours(v), key=lambda w: direction_key(first_dir(w))))
    return rot


def walk_faces(rotation: Mapping[VertexId, Sequence[VertexId]]) -> list[tuple[VertexId, ...]]:
    """All faces of an embedded graph as vertex cycles.

    Bounded faces come out counter-clockwise, the outer face clockwise.
    """
    index = {v: {w: i for i, w in enumerate(ns)} for v, ns in rotation.items()}
    unused = {(v, w) for v, ns in rotation.items() for w in ns}
    faces: list[tuple[VertexId, ...]] = []
    for start in sorted(unused):
        if start not in unused:
            continue
        face: list[VertexId] = []
        u, v = start
        while (u, v) in unused:
            unused.discard((u, v))
            face.append(u)
            ns = rotation[v]
            w = ns[(index[v][u] - 1) % len(ns)]
            u, v = v, w
        faces.append(tuple(face))
    return faces


def faces(d: PolylineDrawing) -> list[tuple[VertexId, ...]]:
    return walk_faces(rotation_system(d))


def face_polygon(d: PolylineDrawing, face: Sequence[VertexId]) -> list[Point]:
    """Boundary points of a face, bends included, in walk order."""
    pts: list[Point] = []
    for i, v in enumerate(face):
        w = face[(i + 1) % len(face)]
        pts.extend(d.polyline(v, w)[:-1])
    return pts


def outer_faces(d: PolylineDrawing) -> list[tuple[VertexId, ...]]:
    return [f for f in faces(d) if len(f) >= 2 and signed_area2(face_polygon(d, f)) <= 0]


def is_triangulated(d: PolylineDrawing) -> bool:
    fs = faces(d)
    return bool(fs) and all(len(f) == 3 and len(set(f)) == 3 for f in fs)


def inner_vertices(d: PolylineDrawing) -> list[VertexId]:
    outer = set(d.outer_face or ())
    if not outer:
        for f in outer_faces(d):
            outer.update(f)
    return sorted(v for v in d.pos if v not in outer)


def check_inner_degrees(d: PolylineDrawing) -> bool:
    if not is_triangulated(d):
        raise NotTriangulated("every face, the outer one included, must be a triangle")
    view = directed_view(d)
    return all(view.indeg(v) >= 1 and view.outdeg(v) >= 1 for v in inner_vertices(d))


def _all_points(d: PolylineDrawing) -> Iterable[Point]:
    yield from d.pos.values()
    for b in d.bends.values():
        yield from b


def integerize(d: PolylineDrawing) -> PolylineDrawing:
    """Scale x by the common denominator and translate so that ``min x = 1``."""
    pts = list(_all_points(d))
    if not pts:
        return d
    if any(p.y.denominator != 1 for p in pts):
        raise NonIntegral("integerize needs integral rows")
    scale = math.lcm(*(p.x.denominator for p in pts))
    shift = 1 - min(p.x for p in pts) * scale
    return d.map_points(lambda p: Point(p.x * scale + shift, p.y))


def _span(values: list[Fraction]) -> int:
    if not values:
        return 0
    if any(v.denominator != 1 for v in values):
        raise NonIntegral("drawing is not on the integer grid")
    return int(max(values) - min(values)) + 1


def width(d: PolylineDrawing) -> int:
    return _span([p.x for p in _all_points(d)])


def height(d: PolylineDrawing) -> int:
    return _span([p.y for p in _all_points(d)])


def mirror_y(d: PolylineDrawing) -> PolylineDrawing:
    """Reflect through the x-axis; rows map to ``-row``."""
    return d.map_points(lambda p: Point(p.x, -p.y))
