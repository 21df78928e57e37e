"""1-10 health score built from structural smells.

Each smell category costs ``health_penalty`` points per finding, capped at
``health_cap`` for the category, and the total is taken off a perfect 10.
The weights are this package's own calibration. Lint findings never count.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .smells import Catalog, SmellFinding, default_catalog

HEALTHY_FROM = 9.0
ALERT_BELOW = 4.0


@dataclass(frozen=True)
class HealthScore:
    value: float
    category: str
    contributions: dict[str, int] = field(default_factory=dict)


def health_category(value: float) -> str:
    if value >= HEALTHY_FROM:
        return "healthy"
    if value < ALERT_BELOW:
        return "alert"
    return "warning"


def health_score(findings: Iterable[SmellFinding], catalog: Catalog | None = None) -> HealthScore:
    catalog = catalog or default_catalog()
    counts = Counter()
    for f in findings:
        if f.tier != "structural":
            raise ValueError(f"health score takes structural findings only, got {f.rule_id}")
        counts[f.rule_id] += 1
    penalty = 0.0
    for rule_id in sorted(counts):
        rule = catalog.get(rule_id)
        if rule is None:
            continue
        contribution = counts[rule_id] * rule.health_penalty
        if rule.health_cap is not None:
            contribution = min(contribution, rule.health_cap)
        penalty += contribution
    value = round(min(10.0, max(1.0, 10.0 - penalty)), 1)
    return HealthScore(value=value, category=health_category(value), contributions=dict(sorted(counts.items())))
