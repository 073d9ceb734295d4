from __future__ import annotations

import logging

from ystraight.models.drawing import PolylineDrawing

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str | int = "WARNING") -> None:
    logging.basicConfig(level=level, format=LOG_FORMAT)


class DrawingSummary:
    """Lazy log argument that renders a drawing as counts only.

    ``logger.debug("%s", DrawingSummary(d))`` prints
    ``n=.. m=.. bends=.. rows=lo..hi`` and is only formatted when emitted.
    """

    __slots__ = ("drawing",)

    def __init__(self, drawing: PolylineDrawing) -> None:
        self.drawing = drawing

    def __str__(self) -> str:
        d = self.drawing
        ys = [p.y for p in d.pos.values()]
        rows = f"{min(ys)}..{max(ys)}" if ys else "-"
        return f"n={len(d.pos)} m={len(d.bends)} bends={d.bend_count()} rows={rows}"
