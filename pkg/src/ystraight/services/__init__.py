"""Algorithms on drawings: validation, row traces, triangulation and straightening."""

from .straighten import straighten
from .triangulate import triangulate_drawing
from .validate import validate

__all__ = ["straighten", "triangulate_drawing", "validate"]
