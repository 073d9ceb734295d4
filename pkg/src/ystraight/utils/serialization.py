"""JSON documents for drawings and flat visibility representations.

x-coordinates are written as strings (``"3"`` or ``"7/2"``) so that exact
rationals survive a round trip; plain JSON integers are accepted on input.
Rows are plain JSON integers.
Bends are listed walking from endpoint ``u``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Union

from pydantic import (
    BaseModel,
    BeforeValidator,
    Field,
    PlainSerializer,
    StrictInt,
    ValidationError,
)

from ystraight.models.drawing import (
    FlatVisibilityRep,
    FVREdge,
    PolylineDrawing,
    VertexBar,
)
from ystraight.models.errors import DrawingError, NonIntegral, ParseError
from ystraight.models.geometry import Point


def _to_fraction(value: object) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not coordinates")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"expected an integer or 'p/q' string, got {type(value).__name__}")


def _row(y: Fraction) -> int:
    if y.denominator != 1:
        raise NonIntegral(f"row {y} is not an integer")
    return int(y)


def format_fraction(value: Fraction) -> str:
    return str(value)


Rational = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(format_fraction, return_type=str),
]


class PointDoc(BaseModel):
    x: Rational
    y: StrictInt

    def point(self) -> Point:
        return Point(self.x, Fraction(self.y))

    @classmethod
    def of(cls, p: Point) -> "PointDoc":
        return cls(x=p.x, y=_row(p.y))


class VertexDoc(PointDoc):
    id: str


class EdgeDoc(BaseModel):
    u: str
    v: str
    bends: List[PointDoc] = Field(default_factory=list)


class DrawingDoc(BaseModel):
    vertices: List[VertexDoc]
    edges: List[EdgeDoc] = Field(default_factory=list)
    outer_face: Optional[List[str]] = None

    def to_drawing(self) -> PolylineDrawing:
        pos: dict[str, Point] = {}
        for i, v in enumerate(self.vertices):
            if v.id in pos:
                raise ParseError(f"duplicate vertex id {v.id!r}", f"vertices.{i}.id")
            pos[v.id] = v.point()
        triples = [(e.u, e.v, [b.point() for b in e.bends]) for e in self.edges]
        outer = tuple(self.outer_face) if self.outer_face else None
        try:
            return PolylineDrawing.build(pos, triples, outer)
        except DrawingError as exc:
            raise ParseError(str(exc), "edges") from exc

    @classmethod
    def from_drawing(cls, d: PolylineDrawing) -> "DrawingDoc":
        return cls(
            vertices=[
                VertexDoc(id=v, x=p.x, y=_row(p.y)) for v, p in sorted(d.pos.items())
            ],
            edges=[
                EdgeDoc(u=a, v=b, bends=[PointDoc.of(p) for p in pts])
                for (a, b), pts in sorted(d.bends.items())
            ],
            outer_face=list(d.outer_face) if d.outer_face else None,
        )


class BarDoc(BaseModel):
    id: str
    xl: Rational
    xr: Rational
    y: StrictInt


class FVREdgeDoc(BaseModel):
    u: str
    v: str
    orient: Literal["h", "v"]
    at: Rational


class FVRDoc(BaseModel):
    vertices: List[BarDoc]
    edges: List[FVREdgeDoc] = Field(default_factory=list)

    def to_fvr(self) -> FlatVisibilityRep:
        try:
            return FlatVisibilityRep(
                {b.id: VertexBar(b.xl, b.xr, Fraction(b.y)) for b in self.vertices},
                tuple(FVREdge(e.u, e.v, e.orient, e.at) for e in self.edges),
            )
        except DrawingError as exc:
            raise ParseError(str(exc), "vertices") from exc

    @classmethod
    def from_fvr(cls, f: FlatVisibilityRep) -> "FVRDoc":
        return cls(
            vertices=[
                BarDoc(id=v, xl=b.xl, xr=b.xr, y=_row(b.y))
                for v, b in sorted(f.vertices.items())
            ],
            edges=[FVREdgeDoc(u=e.u, v=e.v, orient=e.orient, at=e.at) for e in f.edges],
        )


def _wrap(exc: ValidationError) -> ParseError:
    err = exc.errors()[0]
    where = ".".join(str(part) for part in err["loc"]) or "<root>"
    return ParseError(err["msg"], where)


def parse_drawing(text: str) -> PolylineDrawing:
    try:
        doc = DrawingDoc.model_validate_json(text)
    except ValidationError as exc:
        raise _wrap(exc) from exc
    return doc.to_drawing()


def parse_fvr(text: str) -> FlatVisibilityRep:
    try:
        doc = FVRDoc.model_validate_json(text)
    except ValidationError as exc:
        raise _wrap(exc) from exc
    return doc.to_fvr()


def is_fvr_document(raw: object) -> bool:
    if not isinstance(raw, dict):
        return False
    vertices = raw.get("vertices")
    return bool(vertices) and isinstance(vertices[0], dict) and "xl" in vertices[0]


def parse_document(text: str) -> Union[PolylineDrawing, FlatVisibilityRep]:
    """Parse either format; FVR documents are recognised by their vertex bars."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return parse_fvr(text) if is_fvr_document(raw) else parse_drawing(text)


def dump_drawing(d: PolylineDrawing) -> str:
    return DrawingDoc.from_drawing(d).model_dump_json(indent=2, exclude_none=True)


def dump_fvr(f: FlatVisibilityRep) -> str:
    return FVRDoc.from_fvr(f).model_dump_json(indent=2)


def load_document(path: Path) -> Union[PolylineDrawing, FlatVisibilityRep]:
    return parse_document(path.read_text(encoding="utf-8"))


def save_drawing(d: PolylineDrawing, path: Path) -> None:
    path.write_text(dump_drawing(d) + "\n", encoding="utf-8")
