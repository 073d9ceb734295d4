"""Exact rational geometric primitives.

All coordinates are :class:`fractions.Fraction`; the type is always reduced
with a positive denominator, which is exactly the invariant the drawings need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

Rational = Fraction
Number = Union[int, Fraction]


def q(value: Number | str) -> Fraction:
    """Coerce ``value`` to a Fraction; strings may be ``"p/q"`` or integers."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: Number | str, y: Number | str) -> "Point":
        return cls(q(x), q(y))

    def shifted(self, dx: Number = 0, dy: Number = 0) -> "Point":
        return Point(self.x + dx, self.y + dy)


class Segment(NamedTuple):
    a: Point
    b: Point

    @property
    def is_horizontal(self) -> bool:
        return self.a.y == self.b.y

    @property
    def is_degenerate(self) -> bool:
        return self.a == self.b

    @property
    def ymin(self) -> Fraction:
        return min(self.a.y, self.b.y)

    @property
    def ymax(self) -> Fraction:
        return max(self.a.y, self.b.y)

    @property
    def xmin(self) -> Fraction:
        return min(self.a.x, self.b.x)

    @property
    def xmax(self) -> Fraction:
        return max(self.a.x, self.b.x)


@dataclass(frozen=True, slots=True)
class Overlap:
    """Collinear overlap of two segments; ``segment`` is the shared piece."""

    segment: Segment


IntersectionResult = Union[None, Point, Overlap]


@dataclass(frozen=True, slots=True)
class HalfPlane:
    """Open half-plane ``a*x + b*y + c > 0``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def value(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c

    def contains(self, p: Point) -> bool:
        return self.value(p) > 0


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Twice the signed area of triangle ``o, a, b`` (positive when ccw)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)
