"""Graph and drawing data models."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Literal, Mapping

import networkx as nx

from .errors import DrawingError, InvalidFVR
from .geometry import Point, Segment

VertexId = str
EdgeKey = tuple[VertexId, VertexId]


def edge_key(a: VertexId, b: VertexId) -> EdgeKey:
    if a == b:
        raise DrawingError(f"loop at {a!r}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class PlanarGraph:
    """Simple graph with an optional rotation system and outer face.

    ``rotation[v]`` lists the neighbours of ``v`` in counter-clockwise order.
    """

    vertices: frozenset[VertexId]
    edges: frozenset[EdgeKey]
    rotation: Mapping[VertexId, tuple[VertexId, ...]] = field(default_factory=dict)
    outer_face: tuple[VertexId, ...] | None = None
    _adj: dict[VertexId, set[VertexId]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        adj: dict[VertexId, set[VertexId]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            if a not in adj or b not in adj:
                raise DrawingError(f"edge {(a, b)} references an unknown vertex")
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", adj)

    def neighbours(self, v: VertexId) -> set[VertexId]:
        return self._adj[v]

    def has_edge(self, a: VertexId, b: VertexId) -> bool:
        return b in self._adj.get(a, ())

    def degree(self, v: VertexId) -> int:
        return len(self._adj[v])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self.vertices))
        g.add_edges_from(sorted(self.edges))
        return g

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[VertexId, VertexId]], vertices: Iterable[VertexId] = ()
    ) -> "PlanarGraph":
        keys = frozenset(edge_key(a, b) for a, b in edges)
        vs = set(vertices)
        for a, b in keys:
            vs.update((a, b))
        return cls(frozenset(vs), keys)


@dataclass(frozen=True)
class PolylineDrawing:
    """Vertices at exact points, edges as bend sequences.

    ``bends[(a, b)]`` (with ``a < b``) lists the interior points of the edge
    walking from ``a`` to ``b``.
    """

    pos: Mapping[VertexId, Point]
    bends: Mapping[EdgeKey, tuple[Point, ...]]
    outer_face: tuple[VertexId, ...] | None = None
    _adj: dict[VertexId, set[VertexId]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        adj: dict[VertexId, set[VertexId]] = {v: set() for v in self.pos}
        for a, b in self.bends:
            if a >= b:
                raise DrawingError(f"edge key {(a, b)} is not normalised")
            if a not in adj or b not in adj:
                raise DrawingError(f"edge {(a, b)} references an unknown vertex")
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def build(
        cls,
        pos: Mapping[VertexId, Point],
        edges: Iterable[tuple[VertexId, VertexId, Iterable[Point]]] = (),
        outer_face: tuple[VertexId, ...] | None = None,
    ) -> "PolylineDrawing":
        """Create a drawing from ``(u, v, bends-from-u)`` triples."""
        bends: dict[EdgeKey, tuple[Point, ...]] = {}
        for u, v, pts in edges:
            key = edge_key(u, v)
            if key in bends:
                raise DrawingError(f"multi-edge {key}")
            seq = tuple(pts)
            bends[key] = seq if key[0] == u else seq[::-1]
        return cls(dict(pos), bends, outer_face)

    @property
    def vertices(self) -> frozenset[VertexId]:
        return frozenset(self.pos)

    @property
    def edges(self) -> frozenset[EdgeKey]:
        return frozenset(self.bends)

    def neighbours(self, v: VertexId) -> set[VertexId]:
        return self._adj[v]

    def has_edge(self, a: VertexId, b: VertexId) -> bool:
        return b in self._adj.get(a, ())

    def bends_from(self, a: VertexId, b: VertexId) -> tuple[Point, ...]:
        key = edge_key(a, b)
        seq = self.bends[key]
        return seq if key[0] == a else seq[::-1]

    def polyline(self, a: VertexId, b: VertexId) -> tuple[Point, ...]:
        """All points of edge ``(a, b)`` from ``a`` to ``b``, endpoints included."""
        return (self.pos[a], *self.bends_from(a, b), self.pos[b])

    def segments(self, key: EdgeKey) -> list[Segment]:
        pts = self.polyline(*key)
        return [Segment(p, r) for p, r in zip(pts, pts[1:])]

    def bend_count(self) -> int:
        return sum(len(b) for b in self.bends.values())

    def graph(self) -> PlanarGraph:
        from ystraight.services.validate import rotation_system

        return PlanarGraph(self.vertices, self.edges, rotation_system(self), self.outer_face)

    # -- persistent updates -------------------------------------------------

    def with_edge(self, a: VertexId, b: VertexId, inner: Iterable[Point] = ()) -> "PolylineDrawing":
        key = edge_key(a, b)
        seq = tuple(inner)
        bends = dict(self.bends)
        bends[key] = seq if key[0] == a else seq[::-1]
        return replace(self, bends=bends)

    def without_edges(self, keys: Iterable[EdgeKey]) -> "PolylineDrawing":
        drop = set(keys)
        return replace(self, bends={k: v for k, v in self.bends.items() if k not in drop})

    def without_vertices(self, vs: Iterable[VertexId]) -> "PolylineDrawing":
        drop = set(vs)
        return replace(
            self,
            pos={v: p for v, p in self.pos.items() if v not in drop},
            bends={k: b for k, b in self.bends.items() if k[0] not in drop and k[1] not in drop},
            outer_face=None if self.outer_face and drop & set(self.outer_face) else self.outer_face,
        )

    def with_vertex(self, v: VertexId, p: Point) -> "PolylineDrawing":
        pos = dict(self.pos)
        pos[v] = p
        return replace(self, pos=pos)

    def straightened(self) -> "PolylineDrawing":
        return replace(self, bends={k: () for k in self.bends})

    def map_points(self, fn: Callable[[Point], Point]) -> "PolylineDrawing":
        return replace(
            self,
            pos={v: fn(p) for v, p in self.pos.items()},
            bends={k: tuple(fn(p) for p in b) for k, b in self.bends.items()},
        )


@dataclass(frozen=True, slots=True)
class VertexBar:
    xl: Fraction
    xr: Fraction
    y: Fraction


@dataclass(frozen=True, slots=True)
class FVREdge:
    u: VertexId
    v: VertexId
    orient: Literal["h", "v"]
    at: Fraction


@dataclass(frozen=True)
class FlatVisibilityRep:
    """Flat visibility representation: vertices as horizontal bars.

    A vertical edge runs along column ``at``; for a horizontal edge ``at``
    repeats the shared row.
    """

    vertices: Mapping[VertexId, VertexBar]
    edges: tuple[FVREdge, ...]

    def __post_init__(self) -> None:
        for v, bar in self.vertices.items():
            if bar.xl > bar.xr:
                raise InvalidFVR(f"vertex {v!r} has xl > xr")
        for e in self.edges:
            if e.u not in self.vertices or e.v not in self.vertices:
                raise InvalidFVR(f"edge {(e.u, e.v)} references an unknown vertex")
        self._check_layout()

    def _rows(self) -> dict[Fraction, list[tuple[VertexId, VertexBar]]]:
        rows: dict[Fraction, list[tuple[VertexId, VertexBar]]] = {}
        for v, bar in self.vertices.items():
            rows.setdefault(bar.y, []).append((v, bar))
        for bars in rows.values():
            bars.sort(key=lambda item: (item[1].xl, item[0]))
        return rows

    def _check_layout(self) -> None:
        """Bars on a row are disjoint and no edge passes through a third bar."""
        rows = self._rows()
        for bars in rows.values():
            for (a, left), (b, right) in zip(bars, bars[1:]):
                if right.xl <= left.xr:
                    raise InvalidFVR(
                        f"bars of {a!r} and {b!r} overlap on row {left.y}"
                    )
        for e in self.edges:
            bu, bv = self.vertices[e.u], self.vertices[e.v]
            if e.orient == "h":
                if bu.y != bv.y:
                    continue
                x0, x1 = min(bu.xr, bv.xr), max(bu.xl, bv.xl)
                blocked = [w for w, bar in rows[bu.y] if x0 < bar.xl and bar.xr < x1]
            else:
                y0, y1 = min(bu.y, bv.y), max(bu.y, bv.y)
                blocked = [
                    w
                    for row, bars in rows.items()
                    if y0 < row < y1
                    for w, bar in bars
                    if bar.xl <= e.at <= bar.xr
                ]
            if blocked:
                raise InvalidFVR(
                    f"edge {(e.u, e.v)} passes through the bar of {blocked[0]!r}"
                )

    def graph(self) -> PlanarGraph:
        return PlanarGraph.from_edges(((e.u, e.v) for e in self.edges), self.vertices)
