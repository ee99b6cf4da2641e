"""Maps abstract task lengths (MI) to built-in workload parameters.

The multipliers and caps are configurable; every derived parameter is at
least 1. Pi term counts are capped too (the other kinds carry caps already;
an uncapped Pi would run for minutes on large MI values).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from edgeflow import workflow as wf


@dataclass(frozen=True)
class CalibrationConfig:
    pi_terms_per_mi: float = 10_000.0
    pi_terms_cap: int = 100_000_000
    kmp_chars_per_mi: float = 1_000.0
    kmp_chars_cap: int = 10_000_000
    kmp_pattern_len: int = 8
    lev_chars_per_sqrt_mi: float = 10.0
    lev_chars_cap: int = 20_000
    sort_items_per_mi: float = 50.0
    sort_items_cap: int = 50_000

    def __post_init__(self):
        for name in (
            "pi_terms_per_mi",
            "kmp_chars_per_mi",
            "lev_chars_per_sqrt_mi",
            "sort_items_per_mi",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        for name in ("pi_terms_cap", "kmp_chars_cap", "lev_chars_cap", "sort_items_cap",
                     "kmp_pattern_len"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


def calibrate(length_mi: float, kind: str, config: CalibrationConfig | None = None) -> dict:
    """Workload parameters for a task of ``length_mi`` bound to ``kind``."""
    if length_mi <= 0:
        raise ValueError("length_mi must be > 0")
    if config is None:
        config = CalibrationConfig()
    if kind == wf.PI_CALCULATION:
        terms = min(int(length_mi * config.pi_terms_per_mi), config.pi_terms_cap)
        return {"terms": max(1, terms)}
    if kind == wf.KMP_MATCH:
        text_len = min(int(length_mi * config.kmp_chars_per_mi), config.kmp_chars_cap)
        return {
            "text_len": max(1, text_len),
            "pattern_len": config.kmp_pattern_len,
        }
    if kind == wf.LEVENSHTEIN_DISTANCE:
        chars = min(
            int(round(config.lev_chars_per_sqrt_mi * math.sqrt(length_mi))),
            config.lev_chars_cap,
        )
        chars = max(1, chars)
        return {"len_a": chars, "len_b": chars}
    if kind == wf.SELECTION_SORT:
        items = min(int(length_mi * config.sort_items_per_mi), config.sort_items_cap)
        return {"n": max(1, items)}
    if kind == wf.SIMULATED_ONLY:
        return {}
    raise ValueError(f"unknown binding kind {kind!r}")
