"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class YStraightError(Exception):
    """Base class for all errors raised by this package."""


class GeometryError(YStraightError):
    pass


class HorizontalAtRow(GeometryError):
    """A horizontal segment lies on the queried row; it is a run, not a point."""


class NonSimplePolygon(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class OrientationMismatch(GeometryError):
    pass


class DrawingError(YStraightError):
    pass


class NotTriangulated(DrawingError):
    pass


class NonIntegral(DrawingError):
    pass


class InvalidFVR(DrawingError):
    pass


class ParseError(DrawingError):
    """Input document could not be parsed.

    ``location`` names the offending field path (``edges.3.bends.0.x``) or a
    line number when the JSON itself is malformed.
    """

    def __init__(self, message: str, location: str | None = None) -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class TraceMismatch(DrawingError):
    pass


class SearchSpaceExceeded(DrawingError):
    pass


class AlgorithmError(YStraightError):
    """An internal invariant of an algorithm does not hold."""


class NoInnerVertex(AlgorithmError):
    pass


class PreconditionViolated(AlgorithmError):
    def __init__(self, invariant: str, detail: str = "") -> None:
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
        self.invariant = invariant


class RayHitsNothing(AlgorithmError):
    pass
