"""Data models for drawings, graphs and geometry."""

from .drawing import EdgeKey, FlatVisibilityRep, FVREdge, PlanarGraph, PolylineDrawing, edge_key
from .geometry import HalfPlane, Point, Segment

__all__ = [
    "EdgeKey",
    "FVREdge",
    "FlatVisibilityRep",
    "HalfPlane",
    "PlanarGraph",
    "Point",
    "PolylineDrawing",
    "Segment",
    "edge_key",
]
