from __future__ import annotations

import pytest

from ystraight.models.drawing import PolylineDrawing
from ystraight.models.geometry import Point
from ystraight.services.generators import gen_bad, gen_random_monotone
from ystraight.utils.config import get_settings

P = Point.of


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch: pytest.MonkeyPatch):
    for name in ("YSTRAIGHT_LOG_LEVEL", "YSTRAIGHT_SVG_SCALE", "YSTRAIGHT_BRUTE_LIMIT"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("YSTRAIGHT_CHECK_STEPS", "1")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def triangle() -> PolylineDrawing:
    return PolylineDrawing.build(
        {"a": P(1, 1), "b": P(2, 2), "c": P(1, 3)},
        [("a", "b", []), ("b", "c", []), ("a", "c", [])],
        outer_face=("a", "b", "c"),
    )


@pytest.fixture
def crossing_pair() -> PolylineDrawing:
    return PolylineDrawing.build(
        {"a": P(0, 0), "b": P(2, 2), "c": P(0, 2), "d": P(2, 0)},
        [("a", "b", []), ("c", "d", [])],
    )


@pytest.fixture
def bent_square() -> PolylineDrawing:
    """Quadrilateral face whose left side bends around a column."""
    return PolylineDrawing.build(
        {"s": P(2, 1), "e": P(4, 2), "n": P(2, 3), "w": P(0, 2)},
        [
            ("s", "e", []),
            ("e", "n", []),
            ("n", "w", []),
            ("w", "s", []),
        ],
    )


@pytest.fixture
def bad3() -> PolylineDrawing:
    return gen_bad(3)[1]


@pytest.fixture(params=[(8, 1), (12, 7), (15, 42)], ids=lambda c: f"n{c[0]}-s{c[1]}")
def random_drawing(request: pytest.FixtureRequest) -> PolylineDrawing:
    n, seed = request.param
    return gen_random_monotone(n, seed)
