from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterator, Sequence

from ystraight.models.drawing import FlatVisibilityRep, PolylineDrawing
from ystraight.models.errors import AlgorithmError, DrawingError, GeometryError
from ystraight.services.generators import (
    BadGraphParams,
    check_width_recurrences,
    gen_bad,
    gen_nonmonotone,
    gen_random_monotone,
    stacked_width_bound,
    width_bound,
)
from ystraight.services.legacy import (
    fvr_to_polyline,
    gen_legacy_counterexample,
    legacy_straighten,
    order_exhaustion,
)
from ystraight.services.rowtrace import row_trace, trace_difference
from ystraight.services.straighten import straighten
from ystraight.services.triangulate import triangulate_drawing
from ystraight.services.validate import height, integerize, is_y_monotone, validate
from ystraight.utils.config import get_settings
from ystraight.utils.log import DrawingSummary, configure_logging
from ystraight.utils.serialization import dump_drawing, load_document, save_drawing
from ystraight.utils.svg import write_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _load_drawing(path: Path) -> PolylineDrawing:
    doc = load_document(path)
    if isinstance(doc, FlatVisibilityRep):
        return fvr_to_polyline(doc)
    return doc


def _require_straightenable(d: PolylineDrawing) -> PolylineDrawing:
    report = validate(d)
    if not report.ok:
        raise DrawingError(f"input drawing is invalid: {sorted(report.kinds())}")
    if not is_y_monotone(d):
        raise DrawingError("input drawing is not y-monotone")
    return d


@contextmanager
def _algorithm_step(name: str) -> Iterator[None]:
    """Re-raise geometry errors from an algorithm run as internal errors."""
    try:
        yield
    except GeometryError as exc:
        raise AlgorithmError(f"{name}: {exc}") from exc


def _emit(d: PolylineDrawing, out: Path | None) -> None:
    if out is None:
        print(dump_drawing(d))
    else:
        save_drawing(d, out)


def cmd_validate(args: argparse.Namespace) -> int:
    report = validate(_load_drawing(args.input))
    for issue in report.issues:
        print(f"{issue.kind}: {', '.join(map(str, issue.owners))} {issue.detail}".rstrip())
    print("valid" if report.ok else f"invalid ({len(report.issues)} issues)")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_triangulate(args: argparse.Namespace) -> int:
    d = _require_straightenable(_load_drawing(args.input))
    with _algorithm_step("triangulate"):
        tri, aug = triangulate_drawing(d)
    logger.info("added %d vertices and %d edges", len(aug.vertices), len(aug.edges))
    _emit(tri, args.output)
    return EXIT_OK


def cmd_straighten(args: argparse.Namespace) -> int:
    d = _require_straightenable(_load_drawing(args.input))
    logger.info("straightening %s", DrawingSummary(d))
    with _algorithm_step("straighten"):
        result = straighten(d)
        if args.integerize:
            result = integerize(result)
    _emit(result, args.output)
    if args.svg:
        write_svg(result, args.svg)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    original = _load_drawing(args.original)
    result = _load_drawing(args.result)
    problems: list[str] = []
    if set(original.pos) != set(result.pos) or set(original.bends) != set(result.bends):
        problems.append("vertex or edge sets differ")
    else:
        moved = sorted(v for v in original.pos if original.pos[v].y != result.pos[v].y)
        if moved:
            problems.append(f"rows changed for {moved}")
        row = trace_difference(row_trace(original), row_trace(result))
        if row is not None:
            problems.append(f"row orders differ on row {row}")
    if not validate(result).ok:
        problems.append("result is not a planar drawing")
    for p in problems:
        print(p)
    print("verified" if not problems else "verification failed")
    return EXIT_OK if not problems else EXIT_FAILED


def cmd_gen_bad(args: argparse.Namespace) -> int:
    _, d = gen_bad(BadGraphParams(args.d, args.stacked))
    _emit(d, args.output)
    return EXIT_OK


def cmd_gen_nonmono(args: argparse.Namespace) -> int:
    _, d = gen_nonmonotone()
    assert d is not None
    _emit(d, args.output)
    return EXIT_OK


def cmd_gen_random(args: argparse.Namespace) -> int:
    _emit(gen_random_monotone(args.n, args.seed), args.output)
    return EXIT_OK


def cmd_legacy_demo(args: argparse.Namespace) -> int:
    f = gen_legacy_counterexample()
    with _algorithm_step("legacy placement"):
        legacy = legacy_straighten(f)
    crossings = [i for i in validate(legacy).issues if i.kind == "crossing"]
    print(f"legacy placement: {len(crossings)} crossing(s)")
    for issue in crossings:
        print(f"  {issue.owners[0]} x {issue.owners[1]} {issue.detail}".rstrip())
    with _algorithm_step("straighten"):
        fixed = straighten(fvr_to_polyline(f))
    print(f"row-preserving straightening: valid={validate(fixed).ok}")
    report = order_exhaustion(f)
    print(
        f"processing orders tried: {report.tried}, "
        f"trace-preserving: {len(report.preserving)}"
    )
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    bound = stacked_width_bound(args.n) if args.stacked else width_bound(args.n)
    print(f"n={args.n} width >= {bound} (= {float(bound):.2f})")
    if args.check:
        d = args.n // 3 if args.stacked else args.n - 2
        with _algorithm_step("straighten"):
            result = integerize(straighten(gen_bad(BadGraphParams(d, args.stacked))[1]))
        report = check_width_recurrences(result, d)
        print(f"straightened width={report.width} height={height(result)}")
        for v in report.violations:
            print(f"  {v}")
        return EXIT_OK if report.ok else EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ystraight",
        description="Straighten y-monotone poly-line drawings without changing rows",
    )
    parser.add_argument("--log-level", default=None, help="overrides YSTRAIGHT_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a drawing for planarity")
    p.add_argument("input", type=Path)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("triangulate", help="augment a drawing to a short triangulated one")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path, nargs="?")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("straighten", help="straight-line drawing with the same row orders")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path, nargs="?")
    p.add_argument("--integerize", action="store_true", help="scale to the integer grid")
    p.add_argument("--svg", type=Path, default=None, help="also write an SVG picture")
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("verify", help="check a result against its original drawing")
    p.add_argument("original", type=Path)
    p.add_argument("result", type=Path)
    p.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="emit generated drawings").add_subparsers(
        dest="kind", required=True
    )
    p = gen.add_parser("bad", help="path-fan graph forcing exponential width")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--stacked", action="store_true")
    p.add_argument("-o", "--output", type=Path, default=None)
    p.set_defaults(func=cmd_gen_bad)
    p = gen.add_parser("nonmono", help="planar six-row drawing that is not y-monotone")
    p.add_argument("-o", "--output", type=Path, default=None)
    p.set_defaults(func=cmd_gen_nonmono)
    p = gen.add_parser("random", help="random valid y-monotone drawing")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path, default=None)
    p.set_defaults(func=cmd_gen_random)

    legacy = sub.add_parser("legacy", help="left-to-right placement heuristic").add_subparsers(
        dest="action", required=True
    )
    p = legacy.add_parser("demo", help="run the heuristic on its counterexample")
    p.set_defaults(func=cmd_legacy_demo)

    p = sub.add_parser("bound", help="width lower bound for the path-fan graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stacked", action="store_true")
    p.add_argument("--check", action="store_true", help="straighten the instance and compare")
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or get_settings().log_level)
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except AlgorithmError as exc:
        logger.error("internal invariant violated: %s", exc)
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (DrawingError, GeometryError, ValueError, OSError) as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
