"""Remediation-cost aggregation: TD Time, TD Ratio and the A-E rating."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .smells import SmellFinding

DEFAULT_COST_PER_LINE = 30.0

# Inclusive upper bounds on the ratio for each letter; anything above is E.
RATING_BOUNDS = (("A", 0.05), ("B", 0.10), ("C", 0.20), ("D", 0.50))


@dataclass(frozen=True)
class SqaleResult:
    td_time_minutes: float
    code_lines: int
    dev_cost_minutes: float
    td_ratio: float
    rating: str


def td_time(findings: Iterable[SmellFinding]) -> float:
    return sum(f.remediation_minutes for f in findings)


def td_ratio(td_time_minutes: float, code_lines: int, cost_per_line: float = DEFAULT_COST_PER_LINE) -> float:
    """Remediation time over estimated development time; at least one line is assumed."""
    if cost_per_line <= 0:
        raise ValueError("cost_per_line must be > 0")
    if code_lines < 0:
        raise ValueError("code_lines must be >= 0")
    return td_time_minutes / (cost_per_line * max(code_lines, 1))


def maintainability_rating(ratio: float) -> str:
    if ratio < 0:
        raise ValueError("TD ratio must be >= 0")
    for letter, upper in RATING_BOUNDS:
        if ratio <= upper:
            return letter
    return "E"


def assess(
    lint_findings: Iterable[SmellFinding],
    code_lines: int,
    cost_per_line: float = DEFAULT_COST_PER_LINE,
) -> SqaleResult:
    minutes = td_time(lint_findings)
    ratio = td_ratio(minutes, code_lines, cost_per_line)
    return SqaleResult(
        td_time_minutes=minutes,
        code_lines=code_lines,
        dev_cost_minutes=cost_per_line * code_lines,
        td_ratio=ratio,
        rating=maintainability_rating(ratio),
    )
