from __future__ import annotations

import importlib
import math

import networkx as nx
import pytest

from ystraight.models.drawing import PlanarGraph, PolylineDrawing, edge_key
from ystraight.models.errors import NoInnerVertex
from ystraight.models.geometry import Point
from ystraight.services.generators import (
    BadGraphParams,
    check_width_recurrences,
    gen_bad,
    gen_hh_example,
    gen_random_monotone,
    is_hh_drawing,
    width_bound,
)
from ystraight.services.rowtrace import planarity_consistency, row_trace, traces_equal
from ystraight.services.straighten import (
    CaseChoice,
    CaseKind,
    choose_case,
    find_separating_triangle,
    select_vertex,
    straighten,
    straighten_triangulated,
)
from ystraight.services.triangulate import make_short, triangulate_drawing
from ystraight.services.validate import (
    directed_view,
    height,
    integerize,
    validate,
    width,
)

# `ystraight.services.straighten` is shadowed by the re-exported function,
# so fetch the module itself for monkeypatching.
straighten_service = importlib.import_module("ystraight.services.straighten")

# n runs over 5..40
RANDOM_CASES = [(5 + seed % 36, seed) for seed in range(1, 201)]

P = Point.of


def assert_straightened(original: PolylineDrawing, out: PolylineDrawing) -> None:
    assert out.bend_count() == 0
    assert set(out.bends) == set(original.bends)
    assert {v: p.y for v, p in out.pos.items()} == {v: p.y for v, p in original.pos.items()}
    assert validate(out).ok
    assert traces_equal(row_trace(original), row_trace(out))
    assert height(out) == height(original)


@pytest.fixture
def k4_bent() -> PolylineDrawing:
    return PolylineDrawing.build(
        {"B": P(0, 0), "L": P(-10, 4), "R": P(10, 4), "v": P(0, 2)},
        [
            ("B", "L", []),
            ("B", "R", []),
            ("L", "R", []),
            ("v", "B", []),
            ("v", "L", [P(-3, 3)]),
            ("v", "R", []),
        ],
        outer_face=("B", "R", "L"),
    )


@pytest.fixture
def horizontal_pair() -> PolylineDrawing:
    """Octahedron whose inner vertices ``v`` and ``w`` share a row."""
    return PolylineDrawing.build(
        {
            "B": P(0, 0),
            "L": P(-10, 4),
            "R": P(10, 4),
            "v": P(-1, 2),
            "w": P(1, 2),
            "t": P(0, 3),
        },
        [
            ("B", "L", []),
            ("B", "R", []),
            ("L", "R", []),
            ("B", "v", []),
            ("B", "w", []),
            ("v", "w", []),
            ("L", "v", []),
            ("L", "t", []),
            ("R", "w", []),
            ("R", "t", []),
            ("v", "t", []),
            ("w", "t", []),
        ],
        outer_face=("B", "R", "L"),
    )


@pytest.fixture
def two_below() -> PolylineDrawing:
    """``b`` sees two outer vertices below it and only ``c`` above."""
    return make_short(
        PolylineDrawing.build(
            {"B": P(0, 0), "a": P(4, 1), "c": P(0, 3), "b": P(1, 2)},
            [
                ("B", "a", []),
                ("a", "c", []),
                ("B", "c", []),
                ("b", "B", []),
                ("b", "a", []),
                ("b", "c", []),
            ],
            outer_face=("B", "a", "c"),
        )
    )


def test_triangle_base_case(triangle: PolylineDrawing) -> None:
    out = straighten_triangulated(triangle)
    assert out.pos == triangle.pos
    assert out.bend_count() == 0


def test_triangle_base_case_moves_middle_vertex() -> None:
    # a-c bends around b on the right, so b has to end up left of a-c
    d = PolylineDrawing.build(
        {"a": P(1, 1), "b": P(2, 2), "c": P(1, 3)},
        [("a", "b", []), ("b", "c", []), ("a", "c", [P(3, 2)])],
        outer_face=("a", "c", "b"),
    )
    out = straighten_triangulated(d)
    assert out.pos["b"].x < 1
    assert_straightened(d, out)


def test_select_vertex_on_triangle(triangle: PolylineDrawing) -> None:
    with pytest.raises(NoInnerVertex):
        select_vertex(triangle)


def test_select_vertex_in_degree_one(k4_bent: PolylineDrawing) -> None:
    choice = choose_case(k4_bent)
    assert choice.kind is CaseKind.IN_DEG_ONE
    assert choice.vertices == ("v", "B")


def test_select_vertex_horizontal_edge(horizontal_pair: PolylineDrawing) -> None:
    assert validate(horizontal_pair).ok
    choice = choose_case(horizontal_pair)
    assert choice.kind is CaseKind.HORIZONTAL_EDGE
    assert choice.vertices == ("v", "w")


def test_select_vertex_out_degree_one(two_below: PolylineDrawing) -> None:
    assert validate(two_below).ok
    choice = select_vertex(two_below)
    assert choice.kind is CaseKind.OUT_DEG_ONE
    assert choice.vertices == ("b", "c")


def test_vertex_with_two_outer_vertices_below(two_below: PolylineDrawing) -> None:
    assert_straightened(two_below, straighten_triangulated(two_below))


def test_k4_with_bend(k4_bent: PolylineDrawing) -> None:
    assert_straightened(k4_bent, straighten(k4_bent))


def test_horizontal_pair(horizontal_pair: PolylineDrawing) -> None:
    assert_straightened(horizontal_pair, straighten(horizontal_pair))


def test_no_separating_triangle_in_k4(k4_bent: PolylineDrawing) -> None:
    g = k4_bent.graph()
    assert all(find_separating_triangle(g, e) is None for e in sorted(g.edges))


def test_no_separating_triangle_in_octahedron() -> None:
    opposite = {"1": "2", "2": "1", "3": "4", "4": "3", "5": "6", "6": "5"}
    edges = [(a, b) for a in opposite for b in opposite if a < b and opposite[a] != b]
    g = PlanarGraph.from_edges(edges)
    assert len(g.edges) == 12
    assert all(find_separating_triangle(g, e) is None for e in sorted(g.edges))


def test_separating_triangle_in_stacked_graph() -> None:
    graph, _ = gen_bad(BadGraphParams(4, stacked=True))
    tri = find_separating_triangle(graph, ("u", "v"))
    assert tri is not None and tri[:2] == ("u", "v")
    rest = graph.to_networkx()
    rest.remove_nodes_from(["u", "v", "a3"])
    assert not nx.is_connected(rest)


def test_already_straight_drawing_keeps_trace(triangle: PolylineDrawing) -> None:
    out = straighten(triangle)
    assert_straightened(triangle, out)


def test_empty_drawing() -> None:
    empty = PolylineDrawing({}, {})
    assert straighten(empty) == empty


def test_hh_example_stays_two_layered() -> None:
    d, above, below = gen_hh_example()
    assert is_hh_drawing(d, above, below)
    out = straighten(d)
    assert_straightened(d, out)
    assert is_hh_drawing(out, above, below)


@pytest.mark.parametrize("d", [3, 4])
def test_bad_drawing_width(d: int) -> None:
    _, canonical = gen_bad(d)
    out = straighten(canonical)
    assert_straightened(canonical, out)
    grid = integerize(out)
    assert height(grid) == 4
    assert width(grid) >= math.ceil(width_bound(d + 2))
    report = check_width_recurrences(grid, d)
    assert report.ok, report.violations
    assert report.trace_ok


@pytest.mark.slow
@pytest.mark.parametrize("d", [5, 6])
def test_bad_drawing_width_large(d: int) -> None:
    grid = integerize(straighten(gen_bad(d)[1]))
    assert width(grid) >= {5: 22, 6: 43}[d]
    assert check_width_recurrences(grid, d).ok


def test_straighten_random_drawings(random_drawing: PolylineDrawing) -> None:
    out = straighten(random_drawing)
    assert_straightened(random_drawing, out)
    assert planarity_consistency(random_drawing, out)


def test_every_level_has_a_case(random_drawing: PolylineDrawing) -> None:
    tri, _ = triangulate_drawing(random_drawing)
    assert choose_case(tri).kind in set(CaseKind)




@pytest.fixture
def choices(monkeypatch: pytest.MonkeyPatch) -> list[tuple[PolylineDrawing, CaseChoice]]:
    """Every (level, choice) pair the recursion goes through."""
    seen: list[tuple[PolylineDrawing, CaseChoice]] = []
    real = straighten_service.choose_case

    def spy(d: PolylineDrawing) -> CaseChoice:
        choice = real(d)
        seen.append((d, choice))
        return choice

    monkeypatch.setattr(straighten_service, "choose_case", spy)
    return seen


def assert_choice_applies(d: PolylineDrawing, choice: CaseChoice) -> None:
    outer = set(d.outer_face or ())
    view = directed_view(d)
    if choice.kind is CaseKind.SEPARATING_TRIANGLE:
        a, b, c = choice.vertices
        assert {edge_key(a, b), edge_key(b, c), edge_key(a, c)} <= set(d.bends)
        return
    v, other = choice.vertices
    assert v not in outer
    if choice.kind is CaseKind.HORIZONTAL_EDGE:
        assert other in view.horizontal[v]
    elif choice.kind is CaseKind.IN_DEG_ONE:
        assert view.indeg(v) == 1 and other in view.pred[v]
    else:
        assert view.outdeg(v) == 1 and other in view.succ[v]


def test_choices_apply_at_every_level(
    two_below: PolylineDrawing,
    horizontal_pair: PolylineDrawing,
    choices: list[tuple[PolylineDrawing, CaseChoice]],
) -> None:
    straighten(gen_bad(3)[1])
    straighten(horizontal_pair)
    straighten_triangulated(two_below)
    kinds = {choice.kind for _, choice in choices}
    assert {CaseKind.HORIZONTAL_EDGE, CaseKind.OUT_DEG_ONE} <= kinds
    for level, choice in choices:
        assert_choice_applies(level, choice)


def test_swapped_row_order_breaks_consistency(random_drawing: PolylineDrawing) -> None:
    out = straighten(random_drawing)
    assert planarity_consistency(random_drawing, out)
    assert not planarity_consistency(random_drawing, _swap_two_on_a_row(out))


def _swap_two_on_a_row(d: PolylineDrawing) -> PolylineDrawing:
    by_row: dict[object, list[str]] = {}
    for v, p in sorted(d.pos.items()):
        by_row.setdefault(p.y, []).append(v)
    a, b = next(vs for vs in by_row.values() if len(vs) >= 2)[:2]
    pa, pb = d.pos[a], d.pos[b]
    return d.with_vertex(a, pb).with_vertex(b, pa)


@pytest.mark.slow
@pytest.mark.parametrize("n,seed", RANDOM_CASES)
def test_straighten_property_suite(
    n: int, seed: int, choices: list[tuple[PolylineDrawing, CaseChoice]]
) -> None:
    d = gen_random_monotone(n, seed)
    out = straighten(d)
    assert_straightened(d, out)
    assert choices
    for level, choice in choices:
        assert len(level.pos) > 3
        assert_choice_applies(level, choice)
    assert planarity_consistency(d, out)
    assert not planarity_consistency(d, _swap_two_on_a_row(out))
