"""Left-to-right order of drawing features on every integral row.

Two drawings of the same graph whose vertices share their rows, and whose
row orders agree, are interchangeable for planarity purposes: between two
adjacent rows, edges of a short drawing cross exactly when their order flips.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from ystraight.models.drawing import EdgeKey, PolylineDrawing, VertexId
from ystraight.models.geometry import Segment
from ystraight.services.geom import row_crossing
from ystraight.services.validate import validate

logger = logging.getLogger(__name__)

Owner = tuple[str, Union[VertexId, EdgeKey]]


class FeatureKind(str, Enum):
    VERTEX = "vertex"
    BEND = "bend"
    CROSS = "cross"
    RUN = "run"


@dataclass(frozen=True, slots=True)
class RowFeature:
    owner: Owner
    kind: FeatureKind
    x_lo: Fraction
    x_hi: Fraction


@dataclass(frozen=True)
class RowTrace:
    rows: dict[int, tuple[RowFeature, ...]]

    def owners(self, row: int) -> tuple[Owner, ...]:
        return tuple(f.owner for f in self.rows.get(row, ()))


def _edge_pieces(d: PolylineDrawing, key: EdgeKey, row: int) -> list[RowFeature]:
    pts = d.polyline(*key)
    bends = set(d.bends[key])
    spans: list[tuple[Fraction, Fraction, bool]] = []  # (lo, hi, touches a bend)
    for p, r in zip(pts, pts[1:]):
        if p.y == r.y == row:
            spans.append((min(p.x, r.x), max(p.x, r.x), p in bends or r in bends))
            continue
        if p.y == r.y:
            continue
        hit = row_crossing(Segment(p, r), row)
        if hit is not None:
            spans.append((hit.x, hit.x, hit in bends))

    spans.sort()
    merged: list[tuple[Fraction, Fraction, bool]] = []
    for lo, hi, bend in spans:
        if merged and lo <= merged[-1][1]:
            plo, phi, pbend = merged[-1]
            merged[-1] = (plo, max(phi, hi), pbend or bend)
        else:
            merged.append((lo, hi, bend))

    ends = {d.pos[v].x for v in key if d.pos[v].y == row}
    fully_horizontal = all(p.y == row for p in pts)
    out: list[RowFeature] = []
    for lo, hi, bend in merged:
        if lo == hi:
            if lo in ends:
                continue
            kind = FeatureKind.BEND if bend else FeatureKind.CROSS
        else:
            if not fully_horizontal and (lo in ends or hi in ends):
                # a run glued to its own endpoint reads as that vertex
                continue
            kind = FeatureKind.RUN
        out.append(RowFeature(("e", key), kind, lo, hi))
    return out


def _rows_of(d: PolylineDrawing) -> range:
    ys = [p.y for p in d.pos.values()] + [p.y for b in d.bends.values() for p in b]
    if not ys:
        return range(0)
    return range(math.ceil(min(ys)), math.floor(max(ys)) + 1)


def row_features(d: PolylineDrawing, row: int) -> tuple[RowFeature, ...]:
    """Ordered features of a single row."""
    feats: list[RowFeature] = [
        RowFeature(("v", v), FeatureKind.VERTEX, p.x, p.x)
        for v, p in d.pos.items()
        if p.y == row
    ]
    for key in d.bends:
        ys = [p.y for p in d.polyline(*key)]
        if min(ys) <= row <= max(ys):
            feats.extend(_edge_pieces(d, key, row))
    feats.sort(key=lambda f: (f.x_lo, f.x_hi, str(f.owner)))
    return tuple(feats)


def row_trace(d: PolylineDrawing) -> RowTrace:
    return RowTrace({row: row_features(d, row) for row in _rows_of(d)})


def trace_difference(t1: RowTrace, t2: RowTrace) -> int | None:
    """First row on which the owner sequences differ, or ``None``."""
    for row in sorted(set(t1.rows) | set(t2.rows)):
        if t1.owners(row) != t2.owners(row):
            return row
    return None


def traces_equal(t1: RowTrace, t2: RowTrace) -> bool:
    return trace_difference(t1, t2) is None


def planarity_consistency(original: PolylineDrawing, candidate: PolylineDrawing) -> bool:
    """Equal row traces and a valid candidate.

    Agreement of the traces alone should already imply validity for short
    inputs; a disagreement is logged as an error since it means a bug upstream.
    """
    same = traces_equal(row_trace(original), row_trace(candidate))
    valid = validate(candidate).ok
    if same and not valid:
        logger.error("row traces agree but the candidate drawing is not valid")
    return same and valid
