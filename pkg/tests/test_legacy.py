from __future__ import annotations

from fractions import Fraction

import pytest

from ystraight.models.drawing import FlatVisibilityRep, FVREdge, VertexBar
from ystraight.models.errors import InvalidFVR
from ystraight.models.geometry import Point
from ystraight.services.geom import point_in_polygon
from ystraight.services.legacy import (
    fvr_to_polyline,
    gen_legacy_counterexample,
    legacy_straighten,
    order_exhaustion,
    straighten_fvr,
)
from ystraight.services.rowtrace import row_trace, traces_equal
from ystraight.services.validate import is_y_monotone, validate

F = Fraction


def _bar(xl: int, xr: int, y: int) -> VertexBar:
    return VertexBar(F(xl), F(xr), F(y))


@pytest.fixture
def triangle_fvr() -> FlatVisibilityRep:
    return FlatVisibilityRep(
        {"a": _bar(0, 4, 1), "b": _bar(3, 6, 2), "c": _bar(0, 6, 3)},
        (
            FVREdge("a", "b", "v", F(3)),
            FVREdge("b", "c", "v", F(5)),
            FVREdge("a", "c", "v", F(1)),
        ),
    )


def test_single_vertical_edge() -> None:
    f = FlatVisibilityRep(
        {"a": _bar(0, 2, 1), "b": _bar(1, 3, 2)}, (FVREdge("a", "b", "v", F(3, 2)),)
    )
    d = fvr_to_polyline(f)
    assert d.pos == {"a": Point.of(1, 1), "b": Point.of(2, 2)}
    assert d.bends[("a", "b")] == ()


def test_path_on_one_row() -> None:
    f = FlatVisibilityRep(
        {"a": _bar(0, 1, 1), "b": _bar(2, 3, 1), "c": _bar(4, 5, 1)},
        (FVREdge("a", "b", "h", F(1)), FVREdge("b", "c", "h", F(1))),
    )
    d = fvr_to_polyline(f)
    assert validate(d).ok
    assert all(d.pos[a].y == d.pos[b].y for a, b in d.bends)


def test_long_vertical_edge_follows_its_column(triangle_fvr: FlatVisibilityRep) -> None:
    d = fvr_to_polyline(triangle_fvr)
    assert d.bends[("a", "c")] == (Point.of(1, 2),)
    assert validate(d).ok


def test_edge_off_the_bar_is_rejected() -> None:
    f = FlatVisibilityRep(
        {"a": _bar(0, 1, 1), "b": _bar(2, 3, 2)}, (FVREdge("a", "b", "v", F(5, 2)),)
    )
    with pytest.raises(InvalidFVR):
        fvr_to_polyline(f)


@pytest.mark.parametrize(
    "bars",
    [
        {"a": _bar(0, 2, 1), "b": _bar(1, 3, 2), "c": _bar(2, 4, 2)},
        {"a": _bar(0, 2, 1), "b": _bar(1, 3, 2), "c": _bar(3, 5, 2)},
    ],
    ids=["overlap", "touching"],
)
def test_bars_on_a_row_must_be_disjoint(bars: dict[str, VertexBar]) -> None:
    with pytest.raises(InvalidFVR, match="overlap on row 2"):
        FlatVisibilityRep(bars, (FVREdge("a", "b", "v", F(3, 2)),))


def test_vertical_edge_through_another_bar() -> None:
    bars = {"a": _bar(0, 4, 1), "b": _bar(2, 6, 2), "c": _bar(0, 6, 3)}
    with pytest.raises(InvalidFVR, match="bar of 'b'"):
        FlatVisibilityRep(bars, (FVREdge("a", "c", "v", F(3)),))
    # the same column clears b once b starts right of it
    bars["b"] = _bar(4, 6, 2)
    FlatVisibilityRep(bars, (FVREdge("a", "c", "v", F(3)),))


def test_horizontal_edge_through_another_bar() -> None:
    bars = {"a": _bar(0, 1, 1), "b": _bar(2, 3, 1), "c": _bar(4, 5, 1)}
    with pytest.raises(InvalidFVR, match="bar of 'b'"):
        FlatVisibilityRep(bars, (FVREdge("a", "c", "h", F(1)),))


def test_legacy_on_triangle(triangle_fvr: FlatVisibilityRep) -> None:
    d = legacy_straighten(triangle_fvr)
    assert validate(d).ok
    assert d.bend_count() == 0
    assert {v: p.y for v, p in d.pos.items()} == {"a": 1, "b": 2, "c": 3}


def test_counterexample_embedding() -> None:
    d = fvr_to_polyline(gen_legacy_counterexample())
    assert validate(d).ok
    assert is_y_monotone(d)
    boundary = [
        *d.polyline("x", "u1")[:-1],
        *d.polyline("u1", "u2")[:-1],
        *d.polyline("u2", "x")[:-1],
    ]
    for v in ("y1", "y2", "w"):
        assert point_in_polygon(d.pos[v], boundary) == 1


def test_legacy_crosses_on_counterexample() -> None:
    f = gen_legacy_counterexample()
    d = legacy_straighten(f)
    assert {v: p.y for v, p in d.pos.items()} == {v: b.y for v, b in f.vertices.items()}
    assert d.pos["x"] == Point.of(1, 3)
    assert d.pos["w"] == Point.of(3, 3)
    report = validate(d)
    crossings = [i for i in report.issues if i.kind == "crossing"]
    assert ("u1-u2", "w-x") in [i.owners for i in crossings]


def test_row_preserving_straightening_fixes_counterexample() -> None:
    f = gen_legacy_counterexample()
    out = straighten_fvr(f)
    assert validate(out).ok
    assert out.bend_count() == 0
    assert traces_equal(row_trace(out), row_trace(fvr_to_polyline(f)))


def test_no_processing_order_preserves_the_trace() -> None:
    report = order_exhaustion(gen_legacy_counterexample())
    assert report.tried == 720
    assert report.preserving == []
    assert report.first_bad_row is not None


def test_order_must_cover_every_vertex(triangle_fvr: FlatVisibilityRep) -> None:
    with pytest.raises(InvalidFVR):
        legacy_straighten(triangle_fvr, ["a", "b"])
