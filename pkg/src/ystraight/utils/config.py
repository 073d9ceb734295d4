from __future__ import annotations

import os
from functools import lru_cache

from pydantic import BaseModel, Field


def _flag(value: str | None) -> bool:
    return (value or "").strip().lower() in {"1", "true", "yes", "on"}


class Settings(BaseModel):
    log_level: str = "WARNING"
    svg_scale: float = Field(default=40.0, gt=0)
    # upper bound on candidate placements visited by the exhaustive width search
    brute_limit: int = Field(default=2_000_000, gt=0)
    # validate and compare row traces after every recursion level of straighten
    check_steps: bool = False

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            log_level=os.environ.get("YSTRAIGHT_LOG_LEVEL", "WARNING"),
            svg_scale=float(os.environ.get("YSTRAIGHT_SVG_SCALE", "40")),
            brute_limit=int(os.environ.get("YSTRAIGHT_BRUTE_LIMIT", "2000000")),
            check_steps=_flag(os.environ.get("YSTRAIGHT_CHECK_STEPS")),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
