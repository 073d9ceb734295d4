"""Straighten y-monotone poly-line drawings without moving any vertex off its row.

The recursion removes one vertex at a time (or splits at a separating
triangle), straightens the rest and re-inserts the removed part so that
every row keeps its left-to-right order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

import networkx as nx

from ystraight.models.drawing import EdgeKey, PlanarGraph, PolylineDrawing, VertexId, edge_key
from ystraight.models.errors import (
    AlgorithmError,
    HorizontalAtRow,
    NoInnerVertex,
    PreconditionViolated,
)
from ystraight.models.geometry import Point, Segment, sign
from ystraight.services.geom import (
    in_kernel,
    kernel_row_interval,
    pick_in_interval,
    polygon_kernel,
    row_crossing,
    y_affine_map,
)
from ystraight.services.rowtrace import row_features, row_trace, trace_difference
from ystraight.services.triangulate import triangulate_drawing
from ystraight.services.validate import directed_view, mirror_y, rotation_system, validate
from ystraight.utils.config import get_settings
from ystraight.utils.log import DrawingSummary

logger = logging.getLogger(__name__)


class CaseKind(str, Enum):
    SEPARATING_TRIANGLE = "separating-triangle"
    HORIZONTAL_EDGE = "horizontal-edge"
    IN_DEG_ONE = "indeg-one"
    OUT_DEG_ONE = "outdeg-one"


@dataclass(frozen=True)
class CaseChoice:
    """Which reduction applies and to which vertices.

    ``vertices`` is ``(u, v, x)`` for a separating triangle, ``(v, w)`` for a
    horizontal edge and ``(v, u)`` with ``u`` the unique in- (out-) neighbour
    for the degree cases.
    """

    kind: CaseKind
    vertices: tuple[VertexId, ...]


# -- selection ----------------------------------------------------------------


def _outer(d: PolylineDrawing) -> tuple[VertexId, ...]:
    if not d.outer_face or len(d.outer_face) != 3:
        raise PreconditionViolated("triangular outer face", f"got {d.outer_face}")
    return d.outer_face


def _walk_up(d: PolylineDrawing) -> CaseChoice | None:
    """Upward walk from the lowest inner vertex; ``None`` if it cannot start.

    The start fails only when two vertices lie below it without a horizontal
    edge; every later vertex of the walk has in-degree one.
    """
    outer = set(_outer(d))
    inner = [v for v in d.pos if v not in outer]
    if not inner:
        raise NoInnerVertex("a triangle has no inner vertex")
    view = directed_view(d)
    v = min(inner, key=lambda u: (d.pos[u].y, u))
    while True:
        if view.horizontal[v]:
            return CaseChoice(CaseKind.HORIZONTAL_EDGE, (v, min(view.horizontal[v])))
        if len(view.pred[v]) != 1:
            logger.debug("upward walk cannot start at %r (in-degree %d)", v, view.indeg(v))
            return None
        step = sorted(w for w in view.succ[v] if view.indeg(w) == 1)
        if not step:
            return CaseChoice(CaseKind.IN_DEG_ONE, (v, next(iter(view.pred[v]))))
        v = step[0]
        if v in outer:
            raise PreconditionViolated("walk stays inner", f"reached outer vertex {v!r}")


def _scan(d: PolylineDrawing) -> CaseChoice:
    outer = set(_outer(d))
    view = directed_view(d)
    inner = sorted((v for v in d.pos if v not in outer), key=lambda u: (d.pos[u].y, u))
    for v in inner:
        if view.horizontal[v]:
            return CaseChoice(CaseKind.HORIZONTAL_EDGE, (v, min(view.horizontal[v])))
    for v in inner:
        if view.indeg(v) == 1 and all(view.indeg(w) >= 2 for w in view.succ[v]):
            return CaseChoice(CaseKind.IN_DEG_ONE, (v, next(iter(view.pred[v]))))
        if view.outdeg(v) == 1 and all(view.outdeg(w) >= 2 for w in view.pred[v]):
            return CaseChoice(CaseKind.OUT_DEG_ONE, (v, next(iter(view.succ[v]))))
    raise PreconditionViolated("reducible inner vertex", f"none among {len(inner)}")


def select_vertex(d: PolylineDrawing) -> CaseChoice:
    """Pick an inner vertex that one of the contraction cases can remove.

    Walks upward from the lowest inner vertex, then downward from the highest
    one, and finally checks every inner vertex directly.  One of the walks
    always succeeds: either the lowest inner vertex has a single vertex below
    it or the highest one has a single vertex above it.
    """
    choice = _walk_up(d)
    if choice is not None:
        return choice
    choice = _walk_up(mirror_y(d))
    if choice is None:
        return _scan(d)
    if choice.kind is CaseKind.IN_DEG_ONE:
        return CaseChoice(CaseKind.OUT_DEG_ONE, choice.vertices)
    return choice


def _separates(
    nxg: nx.Graph, outer: frozenset[VertexId], tri: tuple[VertexId, VertexId, VertexId]
) -> bool:
    if set(tri) == outer:
        return False
    rest = nxg.subgraph(n for n in nxg if n not in tri)
    return rest.number_of_nodes() > 0 and not nx.is_connected(rest)


def find_separating_triangle(
    g: PlanarGraph, among: tuple[VertexId, VertexId]
) -> tuple[VertexId, VertexId, VertexId] | None:
    """A triangle on edge ``among`` with vertices both inside and outside it."""
    u, v = among
    if not g.has_edge(u, v):
        return None
    outer = frozenset(g.outer_face or ())
    nxg = g.to_networkx()
    for x in sorted(g.neighbours(u) & g.neighbours(v)):
        if _separates(nxg, outer, (u, v, x)):
            return u, v, x
    return None


def _any_separating_triangle(d: PolylineDrawing) -> tuple[VertexId, VertexId, VertexId] | None:
    g = PlanarGraph(d.vertices, d.edges, outer_face=d.outer_face)
    nxg = g.to_networkx()
    outer = frozenset(d.outer_face or ())
    for u, v in sorted(d.edges):
        for x in sorted(g.neighbours(u) & g.neighbours(v)):
            if x > v and _separates(nxg, outer, (u, v, x)):
                return u, v, x
    return None


def choose_case(d: PolylineDrawing) -> CaseChoice:
    tri = _any_separating_triangle(d)
    if tri is not None:
        return CaseChoice(CaseKind.SEPARATING_TRIANGLE, tri)
    return select_vertex(d)


# -- helpers ------------------------------------------------------------------


def _clockwise_from(d: PolylineDrawing, v: VertexId, start: VertexId) -> list[VertexId]:
    ccw = rotation_system(d)[v]
    i = ccw.index(start)
    return [ccw[(i - k) % len(ccw)] for k in range(len(ccw))]


def _connect(d: PolylineDrawing, v: VertexId, p: Point, nbrs: list[VertexId]) -> PolylineDrawing:
    out = d.with_vertex(v, p)
    for x in nbrs:
        out = out.with_edge(v, x)
    return out


def _row_extent(d: PolylineDrawing, key: EdgeKey, row: Fraction) -> tuple[Fraction, Fraction]:
    """Leftmost and rightmost x where the polyline of ``key`` meets ``row``."""
    xs: list[Fraction] = []
    for s in d.segments(key):
        try:
            p = row_crossing(s, row)
        except HorizontalAtRow:
            xs.extend((s.a.x, s.b.x))
            continue
        if p is not None:
            xs.append(p.x)
    if not xs:
        raise PreconditionViolated("edge spans the row", f"{key} misses row {row}")
    return min(xs), max(xs)


def _base_triangle(d: PolylineDrawing) -> PolylineDrawing:
    """Straight triangle keeping the side of the middle vertex."""
    lo, mid, hi = sorted(d.pos, key=lambda u: (d.pos[u].y, u))
    pl, pm, ph = d.pos[lo], d.pos[mid], d.pos[hi]
    out = d.straightened()
    if not (pl.y < pm.y < ph.y):
        return out
    _, right = _row_extent(d, edge_key(lo, hi), pm.y)
    side = 1 if pm.x > right else -1
    hit = row_crossing(Segment(pl, ph), pm.y)
    assert hit is not None
    if sign(pm.x - hit.x) != side:
        out = out.with_vertex(mid, Point(hit.x + side, pm.y))
    return out


def _check_level(before: PolylineDrawing, after: PolylineDrawing, case: str) -> None:
    report = validate(after)
    row = trace_difference(row_trace(before), row_trace(after))
    if not report.ok or row is not None:
        raise AlgorithmError(
            f"{case} produced an invalid level: issues={report.issues[:3]} trace row={row}"
        )


# -- the three cases ----------------------------------------------------------


def _split_triangle(d: PolylineDrawing, tri: tuple[VertexId, VertexId, VertexId]) -> PolylineDrawing:
    outer = set(_outer(d))
    nxg = PlanarGraph(d.vertices, d.edges).to_networkx()
    rest = nxg.subgraph(n for n in nxg if n not in tri)
    inside: set[VertexId] = set()
    for comp in nx.connected_components(rest):
        if not comp & outer:
            inside |= comp
    g0 = d.without_vertices(inside)
    g1 = replace(d.without_vertices(set(d.pos) - inside - set(tri)), outer_face=tri)
    logger.debug("split at %s: %d outside, %d inside", tri, len(g0.pos) - 3, len(inside))

    r0 = straighten_triangulated(g0)
    r1 = straighten_triangulated(g1)
    fit = y_affine_map(
        (r1.pos[tri[0]], r1.pos[tri[1]], r1.pos[tri[2]]),
        (r0.pos[tri[0]], r0.pos[tri[1]], r0.pos[tri[2]]),
    )
    pos = dict(r0.pos)
    for v in inside:
        pos[v] = fit(r1.pos[v])
    bends = dict(r0.bends)
    for key in r1.bends:
        bends.setdefault(key, ())
    return PolylineDrawing(pos, bends, d.outer_face)


def _contract_horizontal(d: PolylineDrawing, v: VertexId, w: VertexId) -> PolylineDrawing:
    cw = _clockwise_from(d, v, w)
    z1, z2, xs = cw[1], cw[-1], cw[2:-1]
    common = d.neighbours(v) & d.neighbours(w)
    if common != {z1, z2}:
        raise PreconditionViolated(
            "two common neighbours", f"{v!r},{w!r} share {sorted(common)}"
        )

    g0 = d.without_vertices([v])
    added: list[EdgeKey] = []
    for x in xs:
        # follow (x, v) up to the row next to v, then straight to w
        g0 = g0.with_edge(x, w, d.polyline(x, v)[1:-1])
        added.append(edge_key(x, w))

    r0 = straighten_triangulated(g0).without_edges(added)
    poly = [r0.pos[u] for u in cw]
    kernel = polygon_kernel(poly)
    xw = r0.pos[w].x
    if d.pos[v].x > d.pos[w].x:
        interval = kernel_row_interval(kernel, d.pos[v].y, right_of=xw)
    else:
        interval = kernel_row_interval(kernel, d.pos[v].y, left_of=xw)
    if interval is None:
        raise PreconditionViolated("kernel meets the row of v", f"vertex {v!r}")
    x = pick_in_interval(*interval)
    return _connect(r0, v, Point(x, d.pos[v].y), cw)


def _nearest_gap(d: PolylineDrawing, x: Fraction, row: int) -> Fraction:
    gaps = []
    for f in row_features(d, row):
        if f.x_lo > x:
            gaps.append(f.x_lo - x)
        elif f.x_hi < x:
            gaps.append(x - f.x_hi)
    return min(gaps) if gaps else Fraction(1)


def _contract_indeg_one(d: PolylineDrawing, v: VertexId, u: VertexId) -> PolylineDrawing:
    cw = _clockwise_from(d, v, u)
    xs = cw[1:]
    yv = d.pos[v].y
    ys = [d.pos[x].y for x in xs]
    if min(ys) <= yv:
        raise PreconditionViolated("all other neighbours above", f"vertex {v!r}")
    m = ys.index(max(ys))
    if any(a > b for a, b in zip(ys[:m], ys[1 : m + 1])) or any(
        a < b for a, b in zip(ys[m:], ys[m + 1 :])
    ):
        raise PreconditionViolated("unimodal upper neighbours", f"vertex {v!r}: {ys}")
    common = d.neighbours(u) & d.neighbours(v)
    if common != {xs[0], xs[-1]}:
        raise PreconditionViolated(
            "two common neighbours", f"{u!r},{v!r} share {sorted(common)}"
        )

    g0 = d.without_vertices([v])
    copies = sorted(xs[1:-1], key=lambda x: d.polyline(v, x)[1].x)
    along = d.polyline(u, v)[1:]
    cnt = len(copies)
    routes: dict[VertexId, list[Point]] = {x: [] for x in copies}
    for p in along:
        if cnt == 0:
            break
        delta = _nearest_gap(g0, p.x, int(p.y)) / (cnt + 1)
        for j, x in enumerate(copies):
            routes[x].append(Point(p.x + delta * (j - Fraction(cnt - 1, 2)), p.y))
    added: list[EdgeKey] = []
    for x in copies:
        g0 = g0.with_edge(u, x, [*routes[x], *d.polyline(v, x)[1:-1]])
        added.append(edge_key(u, x))

    r0 = straighten_triangulated(g0).without_edges(added)
    kernel = polygon_kernel([r0.pos[t] for t in cw])
    hit = row_crossing(Segment(r0.pos[u], r0.pos[xs[m]]), yv)
    if hit is not None and in_kernel(kernel, hit):
        p = hit
    else:
        interval = kernel_row_interval(kernel, yv)
        if interval is None:
            raise PreconditionViolated("kernel meets the row of v", f"vertex {v!r}")
        p = Point(pick_in_interval(*interval), yv)
    return _connect(r0, v, p, cw)


# -- entry points -------------------------------------------------------------


def straighten_triangulated(d: PolylineDrawing) -> PolylineDrawing:
    """Straight-line drawing with the same rows and row orders as ``d``.

    ``d`` must be a valid, short, y-monotone drawing of a triangulated graph
    whose ``outer_face`` names its three outer vertices.
    """
    if len(d.pos) == 3:
        return _base_triangle(d)
    choice = choose_case(d)
    logger.debug("%s on %s (%s)", choice.kind.value, choice.vertices, DrawingSummary(d))

    if choice.kind is CaseKind.SEPARATING_TRIANGLE:
        u, v, x = choice.vertices
        out = _split_triangle(d, (u, v, x))
    elif choice.kind is CaseKind.HORIZONTAL_EDGE:
        out = _contract_horizontal(d, *choice.vertices)
    elif choice.kind is CaseKind.IN_DEG_ONE:
        out = _contract_indeg_one(d, *choice.vertices)
    else:
        out = mirror_y(_contract_indeg_one(mirror_y(d), *choice.vertices))

    if get_settings().check_steps:
        _check_level(d, out, choice.kind.value)
    return out


def straighten(d: PolylineDrawing) -> PolylineDrawing:
    """Planar straight-line drawing of ``d`` with identical vertex rows and row traces."""
    if len(d.pos) == 0:
        return d
    tri, aug = triangulate_drawing(d)
    out = aug.strip(straighten_triangulated(tri))
    logger.info("straightened %s", DrawingSummary(out))
    return out
