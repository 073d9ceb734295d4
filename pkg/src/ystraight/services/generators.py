"""Hard instances, width lower bounds and random fixtures."""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ystraight.models.drawing import EdgeKey, PlanarGraph, PolylineDrawing, VertexId, edge_key
from ystraight.models.errors import SearchSpaceExceeded, TraceMismatch
from ystraight.models.geometry import Overlap, Point, Segment
from ystraight.services.geom import point_on_segment, row_crossing, seg_intersect
from ystraight.services.rowtrace import row_trace, traces_equal
from ystraight.services.validate import validate, width
from ystraight.utils.config import get_settings

logger = logging.getLogger(__name__)

P = Point.of


@dataclass(frozen=True)
class BadGraphParams:
    d: int
    stacked: bool = False

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"d must be at least 2, got {self.d}")


def _a(i: int) -> VertexId:
    return f"a{i}"


def _a_row(i: int) -> int:
    return 3 if i % 2 else 2


def gen_bad(params: BadGraphParams | int) -> tuple[PlanarGraph, PolylineDrawing]:
    """The path-fan graph with a poly-line drawing on four rows.

    ``u`` sits on row 1 and ``v`` on row 4, both at ``x = 0``; ``a_i`` sits at
    ``x = 10 i`` on row 3 for odd ``i`` and row 2 for even ``i``.  Edges that
    would skip a row get one bend half-way to the previous path vertex, which
    realizes the row orders the width argument relies on.  With
    ``stacked=True`` every inner face except ``{u, v, a1}`` receives one
    extra vertex of degree 3.
    """
    if isinstance(params, int):
        params = BadGraphParams(params)
    d = params.d
    pos: dict[VertexId, Point] = {"u": P(0, 1), "v": P(0, 4)}
    edges: list[tuple[VertexId, VertexId, list[Point]]] = [("u", "v", [])]
    for i in range(1, d + 1):
        pos[_a(i)] = P(10 * i, _a_row(i))
        if i % 2:
            edges.append(("u", _a(i), [P(10 * i - 5, 2)]))
            edges.append(("v", _a(i), []))
        else:
            edges.append(("u", _a(i), []))
            edges.append(("v", _a(i), [P(10 * i - 5, 3)]))
        if i > 1:
            edges.append((_a(i - 1), _a(i), []))

    if params.stacked:
        if d < 11:
            logger.warning("stacked bad graph with d=%d < 11; the width bound needs d >= 11", d)
        for i in range(1, d):
            s, t = f"s{i}", f"t{i}"
            pos[s] = P(10 * i + 2, 2)
            pos[t] = P(10 * i + 2, 3)
            for x in ("u", _a(i), _a(i + 1)):
                edges.append((s, x, []))
            for x in ("v", _a(i), _a(i + 1)):
                edges.append((t, x, []))

    drawing = PolylineDrawing.build(pos, edges, outer_face=("u", "v", _a(d)))
    return drawing.graph(), drawing


def width_bound(n: int) -> Fraction:
    """Lower bound ``2^(n-1) / 3`` on the width of the path-fan graph with ``n`` vertices."""
    if n < 4:
        raise ValueError("the bound is stated for n >= 4")
    return Fraction(2 ** (n - 1), 3)


def stacked_width_bound(n: int) -> Fraction:
    if n % 3:
        raise ValueError("the stacked graph has 3d vertices")
    return Fraction(2 ** (n // 3), 3)


@dataclass
class WidthRecurrenceReport:
    violations: list[str] = field(default_factory=list)
    width: int = 0
    bound: Fraction = Fraction(0)
    trace_ok: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


def _path_fan_ids(d: int) -> list[VertexId]:
    return ["u", "v", *(_a(i) for i in range(1, d + 1))]


def check_width_recurrences(
    drawing: PolylineDrawing, d: int | None = None
) -> WidthRecurrenceReport:
    """Check the width recurrences on an integral straight-line drawing.

    Extra vertices (the stacked ones) are ignored.  Rows must match the
    canonical drawing exactly; a mismatching row order is reported through
    ``trace_ok`` together with whichever recurrence then fails.
    """
    if d is None:
        d = sum(1 for v in drawing.pos if v.startswith("a") and v[1:].isdigit())
    ids = _path_fan_ids(d)
    sub = drawing.without_vertices(set(drawing.pos) - set(ids))
    _, canonical = gen_bad(d)
    moved = [v for v in ids if sub.pos[v].y != canonical.pos[v].y]
    if moved:
        raise TraceMismatch(f"vertices off their canonical rows: {moved}")

    report = WidthRecurrenceReport(width=width(sub), bound=width_bound(d + 2))
    report.trace_ok = traces_equal(row_trace(sub), row_trace(canonical))

    x0 = sub.pos["v"].x
    x = {v: sub.pos[v].x - x0 for v in ids}
    xu = x["u"]
    if x[_a(1)] < math.floor(xu / 3) + 1:
        report.violations.append(f"x(a1)={x[_a(1)]} < floor(x(u)/3)+1")
    for k in range(2, d + 1):
        prev, cur = x[_a(k - 1)], x[_a(k)]
        need = 2 * prev + 1 if k % 2 == 0 else 2 * prev - xu + 1
        if cur < need:
            report.violations.append(f"x(a{k})={cur} < {need}")
    if report.width < math.ceil(report.bound):
        report.violations.append(f"width {report.width} < ceil({report.bound})")
    return report


def check_bad_rows(drawing: PolylineDrawing, d: int) -> list[str]:
    """Row claims for a four-row drawing of the path-fan graph.

    ``u`` and ``v`` occupy the bottom and top row, and the path vertices
    alternate between the two middle rows starting next to ``v``.
    """
    base = min(p.y for p in drawing.pos.values()) - 1
    row = {v: drawing.pos[v].y - base for v in _path_fan_ids(d)}
    problems: list[str] = []
    if {row["u"], row["v"]} != {1, 4}:
        problems.append(f"u, v on rows {row['u']}, {row['v']}")
    top_is_v = row["v"] == 4
    for i in range(1, d + 1):
        want = _a_row(i) if top_is_v else 5 - _a_row(i)
        if row[_a(i)] != want:
            problems.append(f"a{i} on row {row[_a(i)]}, expected {want}")
    return problems


def brute_min_width(d: int, max_w: int) -> int | None:
    """Smallest integral width of a straight-line drawing with the canonical rows and trace."""
    _, canonical = gen_bad(d)
    target = row_trace(canonical)
    limit = get_settings().brute_limit
    evens = [_a(i) for i in range(2, d + 1, 2)]
    odds = [_a(i) for i in range(1, d + 1, 2)]
    visited = 0
    for w in range(1, max_w + 1):
        cols = range(1, w + 1)
        for xu, xv in itertools.product(cols, cols):
            for row2 in itertools.combinations(cols, len(evens)):
                for row3 in itertools.combinations(cols, len(odds)):
                    visited += 1
                    if visited > limit:
                        raise SearchSpaceExceeded(f"more than {limit} placements for d={d}")
                    xs = [xu, xv, *row2, *row3]
                    if min(xs) != 1 or max(xs) != w:
                        continue
                    pos = dict(canonical.pos)
                    pos["u"] = P(xu, 1)
                    pos["v"] = P(xv, 4)
                    pos.update({a: P(x, 2) for a, x in zip(evens, row2)})
                    pos.update({a: P(x, 3) for a, x in zip(odds, row3)})
                    cand = PolylineDrawing(pos, {k: () for k in canonical.bends})
                    if traces_equal(row_trace(cand), target) and validate(cand).ok:
                        logger.info("d=%d: width %d after %d placements", d, w, visited)
                        return w
    return None


# -- non-monotone six-row instance --------------------------------------------


def _gadget(prefix: str, dx: int) -> tuple[dict[VertexId, Point], list[tuple[VertexId, VertexId, list[Point]]]]:
    def at(x: Fraction | int, y: int) -> Point:
        return Point(Fraction(x) + dx, Fraction(y))

    def n(name: str) -> VertexId:
        return f"{prefix}{name}"

    pos = {
        n("a"): at(0, 2),
        n("b"): at(30, 2),
        n("c"): at(60, 2),
        n("r"): at(30, 4),
        n("s"): at(20, 3),
        n("t"): at(40, 3),
        n("q1"): at(30, 1),
        n("q2"): at(-5, 3),
        n("q3"): at(30, 6),
        n("q4"): at(65, 3),
    }
    edges: list[tuple[VertexId, VertexId, list[Point]]] = [
        (n("a"), n("b"), []),
        (n("b"), n("c"), []),
        (n("a"), n("c"), [at(-2, 5), at(62, 5)]),
        (n("r"), n("s"), []),
        (n("r"), n("t"), []),
        (n("s"), n("t"), []),
        (n("a"), n("s"), []),
        (n("b"), n("t"), []),
        (n("q1"), n("q2"), [at(-5, 1)]),
        (n("q2"), n("q3"), [at(-5, 6)]),
        (n("q3"), n("q4"), [at(65, 6)]),
        (n("q4"), n("q1"), [at(65, 1)]),
        (n("q1"), n("b"), []),
        (n("q2"), n("a"), []),
        (n("q4"), n("c"), []),
        (n("q3"), n("a"), [at(-3, 5)]),
        (n("q3"), n("c"), [at(63, 5)]),
    ]
    columns = {
        "a": [2, 4, 6, 8, 10],
        "b": [Fraction(82, 2), Fraction(83, 2), 42, Fraction(85, 2), 43],
        "c": [45, 47, 49, 51, 53],
    }
    for side, xs in columns.items():
        for j, x in enumerate(xs, start=1):
            m = n(f"m{side}{j}")
            pos[m] = at(x, 3)
            edges.append((n(side), m, []))
            edges.append((n("r"), m, []))
    return pos, edges


def gen_nonmonotone(with_drawing: bool = True) -> tuple[PlanarGraph, PolylineDrawing | None]:
    """Two copies of a prism with three ``K_{2,5}`` gadgets inside a 4-cycle.

    Within a copy the cycle ``q1 q2 q3 q4`` is joined to the outer triangle
    (``q1-b``, ``q2-a``, ``q4-c``, and ``q3`` to both ``a`` and ``c``).  The
    emitted drawing uses six rows and routes ``(a, c)`` over the top, so it
    is planar but not y-monotone.
    """
    pos: dict[VertexId, Point] = {}
    edges: list[tuple[VertexId, VertexId, list[Point]]] = []
    for k, dx in ((1, 0), (2, 100)):
        p, e = _gadget(f"{k}:", dx)
        pos.update(p)
        edges.extend(e)
    drawing = PolylineDrawing.build(pos, edges)
    graph = PlanarGraph.from_edges(drawing.edges, drawing.vertices)
    return graph, drawing if with_drawing else None


_HUBS = ("h1", "h2")
_SPOKES = tuple(f"m{j}" for j in range(1, 6))


@dataclass
class ThreeRowReport:
    width: int
    placements: int = 0
    planar: int = 0
    # planar placements whose 2-side misses row 1 or row 3
    offending: list[dict[VertexId, Point]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.planar > 0 and not self.offending


def _mirrors(cells: Sequence[Point], width: int) -> list[tuple[Point, ...]]:
    """``cells`` and its images under the left-right and top-bottom flips."""
    views: list[tuple[Point, ...]] = []
    for fx, fy in itertools.product((False, True), repeat=2):
        moved = (
            Point(width + 1 - c.x if fx else c.x, 4 - c.y if fy else c.y) for c in cells
        )
        views.append(tuple(sorted(moved)))
    return views


def k25_three_row_search(width: int = 5) -> ThreeRowReport:
    """Straight-line placements of ``K_{2,5}`` on rows 1..3 and columns 1..width.

    Every planar placement is expected to put the two hubs on rows 1 and 3.
    Only the lexicographically smallest placement of each mirror class is
    checked.
    """
    limit = get_settings().brute_limit
    cells = [P(x, y) for y in (1, 2, 3) for x in range(1, width + 1)]
    bends: dict[EdgeKey, tuple[Point, ...]] = {
        edge_key(h, m): () for h in _HUBS for m in _SPOKES
    }
    report = ThreeRowReport(width)
    for hubs in itertools.combinations(cells, 2):
        rest = [c for c in cells if c not in hubs]
        hub_views = _mirrors(hubs, width)
        for spokes in itertools.combinations(rest, len(_SPOKES)):
            spoke_views = _mirrors(spokes, width)
            if min(zip(hub_views, spoke_views)) != (hub_views[0], spoke_views[0]):
                continue
            report.placements += 1
            if report.placements > limit:
                raise SearchSpaceExceeded(f"more than {limit} K_2,5 placements")
            pos = {**dict(zip(_HUBS, hubs)), **dict(zip(_SPOKES, spokes))}
            if not validate(PolylineDrawing(pos, bends)).ok:
                continue
            report.planar += 1
            if {hubs[0].y, hubs[1].y} != {1, 3}:
                report.offending.append(pos)
    logger.info(
        "K_2,5 on three rows, width %d: %d placements, %d planar, %d offending",
        width,
        report.placements,
        report.planar,
        len(report.offending),
    )
    return report


# -- random fixtures ----------------------------------------------------------


def _segment_clear(
    seg: Segment, ends: Iterable[Point], segs: list[Segment], points: Iterable[Point]
) -> bool:
    allowed = set(ends)
    for p in points:
        if p not in allowed and point_on_segment(p, seg):
            return False
    for other in segs:
        hit = seg_intersect(seg, other)
        if hit is None:
            continue
        if isinstance(hit, Overlap) or hit not in allowed:
            return False
    return True


def gen_random_monotone(n: int, seed: int) -> PolylineDrawing:
    """Deterministic valid y-monotone poly-line drawing on ``n`` vertices.

    Vertices land on distinct lattice points; candidate edges are added
    greedily in shuffled order whenever they stay clear of everything drawn
    so far.  About half of the edges spanning two or more rows then get one
    bend on an intermediate row, nudged sideways.
    """
    if n < 3:
        raise ValueError("need at least three vertices")
    rng = random.Random(seed)
    rows = max(3, n // 3)
    digits = len(str(n - 1))
    ids = [f"v{i:0{digits}d}" for i in range(n)]

    pos: dict[VertexId, Point] = {}
    taken: set[Point] = set()
    for v in ids:
        p = P(rng.randint(1, 3 * n), rng.randint(1, rows))
        while p in taken:
            p = P(rng.randint(1, 3 * n), rng.randint(1, rows))
        taken.add(p)
        pos[v] = p

    pieces: dict[EdgeKey, list[Segment]] = {}

    def others(skip: EdgeKey | None = None) -> list[Segment]:
        return [s for k, segs in pieces.items() if k != skip for s in segs]

    pairs = list(itertools.combinations(ids, 2))
    rng.shuffle(pairs)
    for a, b in pairs:
        seg = Segment(pos[a], pos[b])
        if _segment_clear(seg, (pos[a], pos[b]), others(), pos.values()):
            pieces[edge_key(a, b)] = [seg]

    bends: dict[EdgeKey, tuple[Point, ...]] = {k: () for k in pieces}
    for key in sorted(pieces):
        a, b = pos[key[0]], pos[key[1]]
        lo, hi = int(min(a.y, b.y)), int(max(a.y, b.y))
        if hi - lo < 2 or rng.random() < 0.5:
            continue
        hit = row_crossing(Segment(a, b), rng.randint(lo + 1, hi - 1))
        if not isinstance(hit, Point):
            continue
        rest = others(key)
        offset = Fraction(rng.choice((-1, 1)) * rng.randint(1, 3))
        for _ in range(6):
            bend = Point(hit.x + offset, hit.y)
            cand = [Segment(a, bend), Segment(bend, b)]
            if all(_segment_clear(s, (a, b), rest, pos.values()) for s in cand):
                bends[key] = (bend,)
                pieces[key] = cand
                break
            offset /= 2
    drawing = PolylineDrawing(pos, bends)
    logger.debug("random drawing seed=%d: %d edges, %d bends", seed, len(bends), drawing.bend_count())
    return drawing


# -- two-layer example --------------------------------------------------------


def gen_hh_example() -> tuple[PolylineDrawing, frozenset[VertexId], frozenset[VertexId]]:
    """Bipartite drawing with one class above the x-axis and the other below it."""
    pos = {
        "a1": P(0, 1),
        "a2": P(4, 1),
        "a3": P(2, 2),
        "b1": P(0, -1),
        "b2": P(4, -1),
    }
    edges = [
        ("a1", "b1", []),
        ("a2", "b2", []),
        ("a1", "b2", []),
        ("a3", "b1", [P(-1, 1)]),
        ("a3", "b2", [P(5, 1)]),
    ]
    drawing = PolylineDrawing.build(pos, edges)
    return drawing, frozenset({"a1", "a2", "a3"}), frozenset({"b1", "b2"})


def is_hh_drawing(
    d: PolylineDrawing, above: Iterable[VertexId], below: Iterable[VertexId]
) -> bool:
    top, bottom = set(above), set(below)
    if top & bottom or top | bottom != set(d.pos):
        return False
    if any(d.pos[v].y <= 0 for v in top) or any(d.pos[v].y >= 0 for v in bottom):
        return False
    return all((a in top) != (b in top) for a, b in d.bends)
