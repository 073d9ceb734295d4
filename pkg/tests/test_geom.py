from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ystraight.models.errors import HorizontalAtRow, NonSimplePolygon, OrientationMismatch
from ystraight.models.geometry import Overlap, Point, Segment
from ystraight.services.geom import (
    direction_key,
    in_kernel,
    is_simple_polygon,
    kernel_row_interval,
    pick_in_interval,
    point_in_polygon,
    polygon_kernel,
    row_crossing,
    seg_intersect,
    signed_area2,
    y_affine_map,
)

P = Point.of
SQUARE = [P(0, 0), P(2, 0), P(2, 2), P(0, 2)]
U_SHAPE = [P(0, 0), P(6, 0), P(6, 4), P(4, 4), P(4, 1), P(2, 1), P(2, 4), P(0, 4)]


def test_seg_intersect_classifies_exactly() -> None:
    assert seg_intersect(Segment(P(0, 0), P(2, 2)), Segment(P(0, 2), P(2, 0))) == P(1, 1)
    assert seg_intersect(Segment(P(0, 0), P(1, 0)), Segment(P(2, 0), P(3, 0))) is None
    hit = seg_intersect(Segment(P(0, 0), P(2, 0)), Segment(P(1, 0), P(3, 0)))
    assert hit == Overlap(Segment(P(1, 0), P(2, 0)))


def test_seg_intersect_touching_endpoint() -> None:
    assert seg_intersect(Segment(P(0, 0), P(2, 0)), Segment(P(1, 0), P(1, 3))) == P(1, 0)
    assert seg_intersect(Segment(P(0, 0), P(1, 1)), Segment(P(1, 1), P(3, 0))) == P(1, 1)


def test_row_crossing() -> None:
    assert row_crossing(Segment(P(1, 1), P(3, 3)), 2) == P(2, 2)
    assert row_crossing(Segment(P(0, 0), P(0, 4)), 5) is None
    assert row_crossing(Segment(P(0, 0), P(3, 2)), 1) == Point(Fraction(3, 2), Fraction(1))
    with pytest.raises(HorizontalAtRow):
        row_crossing(Segment(P(0, 2), P(4, 2)), 2)


def test_polygon_predicates() -> None:
    assert signed_area2(SQUARE) == 8
    assert signed_area2(SQUARE[::-1]) == -8
    assert is_simple_polygon(U_SHAPE)
    assert not is_simple_polygon([P(0, 0), P(2, 2), P(2, 0), P(0, 2)])
    assert point_in_polygon(P(1, 1), SQUARE) == 1
    assert point_in_polygon(P(2, 1), SQUARE) == 0
    assert point_in_polygon(P(3, 1), SQUARE) == -1
    assert point_in_polygon(P(3, 3), U_SHAPE) == -1


def test_kernel_of_convex_polygon_is_itself() -> None:
    kernel = polygon_kernel(SQUARE)
    assert in_kernel(kernel, P(1, 1))
    assert not in_kernel(kernel, P(2, 1))
    assert kernel_row_interval(kernel, 1, right_of=Fraction(1)) == (1, 2)


def test_kernel_of_u_shape_is_empty() -> None:
    kernel = polygon_kernel(U_SHAPE)
    samples = [P(Fraction(i, 4), Fraction(j, 4)) for i in range(25) for j in range(17)]
    assert not any(in_kernel(kernel, p) for p in samples)
    assert all(kernel_row_interval(kernel, Fraction(j, 2)) is None for j in range(9))


def test_kernel_rejects_self_intersecting_polygon() -> None:
    with pytest.raises(NonSimplePolygon):
        polygon_kernel([P(0, 0), P(2, 2), P(2, 0), P(0, 2)])


def test_pick_in_interval() -> None:
    assert pick_in_interval(Fraction(1), Fraction(2)) == Fraction(3, 2)
    assert pick_in_interval(Fraction(1), None) == 2
    assert pick_in_interval(None, Fraction(1)) == 0


def test_y_affine_map() -> None:
    tri = (P(0, 0), P(2, 0), P(0, 2))
    ident = y_affine_map(tri, tri)
    assert (ident.alpha, ident.beta, ident.gamma) == (1, 0, 0)
    m = y_affine_map(tri, (P(1, 0), P(3, 0), P(5, 2)))
    assert (m.alpha, m.beta, m.gamma) == (1, 2, 1)
    assert [m(p) for p in tri] == [P(1, 0), P(3, 0), P(5, 2)]
    with pytest.raises(OrientationMismatch):
        y_affine_map(tri, (P(3, 0), P(1, 0), P(0, 2)))


def test_direction_key_is_ccw_from_positive_x() -> None:
    down, left, diag, right = [(Fraction(a), Fraction(b)) for a, b in ((0, -1), (-1, 0), (1, 1), (1, 0))]
    assert sorted([down, left, diag, right], key=direction_key) == [right, diag, left, down]


coords = st.integers(min_value=-20, max_value=20)


@given(coords, coords, coords, coords, coords, coords, coords, coords)
def test_seg_intersect_is_symmetric(a, b, c, d, e, f, g, h) -> None:
    s1, s2 = Segment(P(a, b), P(c, d)), Segment(P(e, f), P(g, h))
    r1, r2 = seg_intersect(s1, s2), seg_intersect(s2, s1)
    if isinstance(r1, Overlap):
        assert isinstance(r2, Overlap)
        assert set(r1.segment) == set(r2.segment)
    else:
        assert r1 == r2


@given(coords, coords, coords, coords, st.integers(min_value=-20, max_value=20))
def test_row_crossing_lies_on_segment(a, b, c, d, row) -> None:
    s = Segment(P(a, b), P(c, d))
    if s.is_horizontal:
        return
    hit = row_crossing(s, row)
    if s.ymin <= row <= s.ymax:
        assert hit is not None and hit.y == row
        assert seg_intersect(s, Segment(hit, hit)) == hit
    else:
        assert hit is None


@given(
    st.tuples(coords, coords),
    st.tuples(st.integers(1, 5), st.integers(-5, 5), st.integers(-5, 5)),
)
def test_y_affine_map_preserves_rows_and_orientation(base, coeffs) -> None:
    x0, y0 = base
    src = (P(x0, y0), P(x0 + 3, y0), P(x0 + 1, y0 + 2))
    alpha, beta, gamma = coeffs
    dst = tuple(P(alpha * p.x + beta * p.y + gamma, p.y) for p in src)
    m = y_affine_map(src, dst)  # type: ignore[arg-type]
    assert (m.alpha, m.beta, m.gamma) == (alpha, beta, gamma)
