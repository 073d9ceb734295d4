"""Exact plane geometry: intersections, row crossings, kernels, y-preserving maps.

Every predicate works on :class:`fractions.Fraction`; nothing here ever
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from ystraight.models.errors import (
    DegenerateTriangle,
    GeometryError,
    HorizontalAtRow,
    NonSimplePolygon,
    OrientationMismatch,
)
from ystraight.models.geometry import (
    HalfPlane,
    IntersectionResult,
    Overlap,
    Point,
    Segment,
    cross,
    sign,
)


def point_on_segment(p: Point, s: Segment) -> bool:
    """Closed containment of ``p`` in ``s``."""
    if cross(s.a, s.b, p) != 0:
        return False
    return s.xmin <= p.x <= s.xmax and s.ymin <= p.y <= s.ymax


def seg_intersect(s1: Segment, s2: Segment) -> IntersectionResult:
    """Classify the intersection of two closed segments exactly."""
    a, b = s1
    c, d = s2
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)

    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        # Collinear (or degenerate): points along a line sort lexicographically.
        lo = max(min(a, b), min(c, d))
        hi = min(max(a, b), max(c, d))
        if lo > hi:
            return None
        if lo == hi:
            return lo
        return Overlap(Segment(lo, hi))

    if sign(d1) * sign(d2) < 0 and sign(d3) * sign(d4) < 0:
        t = d3 / (d3 - d4)
        return Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))

    for p, s in ((c, s1), (d, s1), (a, s2), (b, s2)):
        if point_on_segment(p, s):
            return p
    return None


def row_crossing(s: Segment, row: Fraction | int) -> Point | None:
    """Exact point where ``s`` meets the horizontal line ``y = row``."""
    row = Fraction(row)
    if s.is_horizontal:
        if s.a.y == row:
            raise HorizontalAtRow(f"segment {s} lies on row {row}")
        return None
    if not (s.ymin <= row <= s.ymax):
        return None
    a, b = s
    t = (row - a.y) / (b.y - a.y)
    return Point(a.x + t * (b.x - a.x), row)


def signed_area2(poly: Sequence[Point]) -> Fraction:
    total = Fraction(0)
    for i, p in enumerate(poly):
        r = poly[(i + 1) % len(poly)]
        total += p.x * r.y - r.x * p.y
    return total


def is_simple_polygon(poly: Sequence[Point]) -> bool:
    k = len(poly)
    if k < 3 or len(set(poly)) != k:
        return False
    edges = [Segment(poly[i], poly[(i + 1) % k]) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            hit = seg_intersect(edges[i], edges[j])
            if hit is None:
                continue
            adjacent = j == i + 1 or (i == 0 and j == k - 1)
            if adjacent and not isinstance(hit, Overlap):
                continue
            return False
    return signed_area2(poly) != 0


def point_in_polygon(p: Point, poly: Sequence[Point]) -> int:
    """``1`` strictly inside, ``0`` on the boundary, ``-1`` outside."""
    k = len(poly)
    inside = False
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if point_on_segment(p, Segment(a, b)):
            return 0
        if (a.y > p.y) != (b.y > p.y):
            x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x > p.x:
                inside = not inside
    return 1 if inside else -1


def polygon_kernel(poly: Sequence[Point]) -> list[HalfPlane]:
    """Kernel of a simple polygon as the intersection of open inner half-planes."""
    if not is_simple_polygon(poly):
        raise NonSimplePolygon(f"polygon with {len(poly)} vertices is not simple")
    ccw = signed_area2(poly) > 0
    planes: list[HalfPlane] = []
    k = len(poly)
    for i in range(k):
        p, r = poly[i], poly[(i + 1) % k]
        a = -(r.y - p.y)
        b = r.x - p.x
        c = (r.y - p.y) * p.x - (r.x - p.x) * p.y
        if not ccw:
            a, b, c = -a, -b, -c
        planes.append(HalfPlane(a, b, c))
    return planes


def in_kernel(kernel: Sequence[HalfPlane], p: Point) -> bool:
    return all(h.contains(p) for h in kernel)


def kernel_row_interval(
    kernel: Sequence[HalfPlane],
    row: Fraction | int,
    right_of: Fraction | None = None,
    left_of: Fraction | None = None,
) -> tuple[Fraction | None, Fraction | None] | None:
    """Open x-interval of points ``(x, row)`` inside the kernel.

    ``None`` bounds are unbounded; the result itself is ``None`` if empty.
    """
    row = Fraction(row)
    lo, hi = right_of, left_of
    for h in kernel:
        rest = h.b * row + h.c
        if h.a == 0:
            if rest <= 0:
                return None
            continue
        t = -rest / h.a
        if h.a > 0:
            lo = t if lo is None else max(lo, t)
        else:
            hi = t if hi is None else min(hi, t)
    if lo is not None and hi is not None and lo >= hi:
        return None
    return lo, hi


def pick_in_interval(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    """Midpoint of an open interval; one unit inside an unbounded side."""
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1
    if hi is not None:
        return hi - 1
    return Fraction(0)


@dataclass(frozen=True, slots=True)
class YAffineMap:
    """``(x, y) -> (alpha*x + beta*y + gamma, y)`` with ``alpha > 0``."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __call__(self, p: Point) -> Point:
        return Point(self.alpha * p.x + self.beta * p.y + self.gamma, p.y)


def y_affine_map(
    src: tuple[Point, Point, Point], dst: tuple[Point, Point, Point]
) -> YAffineMap:
    if any(s.y != d.y for s, d in zip(src, dst)):
        raise GeometryError("corresponding points must share their y-coordinate")
    (x1, y1), (x2, y2), (x3, y3) = src
    det = x1 * (y2 - y3) - y1 * (x2 - x3) + (x2 * y3 - x3 * y2)
    if det == 0:
        raise DegenerateTriangle(f"source triangle {src} is degenerate")
    u1, u2, u3 = (p.x for p in dst)
    alpha = (u1 * (y2 - y3) - y1 * (u2 - u3) + (u2 * y3 - u3 * y2)) / det
    beta = (x1 * (u2 - u3) - u1 * (x2 - x3) + (x2 * u3 - x3 * u2)) / det
    gamma = (x1 * (y2 * u3 - y3 * u2) - y1 * (x2 * u3 - x3 * u2) + u1 * (x2 * y3 - x3 * y2)) / det
    if alpha <= 0:
        raise OrientationMismatch(f"alpha={alpha} would reverse the order within rows")
    return YAffineMap(alpha, beta, gamma)


def _half(dx: Fraction, dy: Fraction) -> int:
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def _compare_directions(u: tuple[Fraction, Fraction], v: tuple[Fraction, Fraction]) -> int:
    hu, hv = _half(*u), _half(*v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -sign(c)


direction_key = cmp_to_key(_compare_directions)
"""Sort key ordering direction vectors counter-clockwise from the positive x-axis."""
