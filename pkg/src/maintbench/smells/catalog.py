"""Rule catalog: which detectors run, their thresholds, costs and health penalties."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Iterator, Mapping

SEVERITIES = ("INFO", "MINOR", "MAJOR", "CRITICAL", "BLOCKER")
TIERS = ("structural", "lint")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class RuleSpec:
    id: str
    tier: str
    severity: str
    remediation_minutes: float
    health_penalty: float = 0.0
    health_cap: float | None = None
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.tier not in TIERS:
            raise CatalogError(f"rule {self.id}: tier must be one of {TIERS}")
        if self.severity not in SEVERITIES:
            raise CatalogError(f"rule {self.id}: severity must be one of {SEVERITIES}")
        if not self.remediation_minutes > 0:
            raise CatalogError(f"rule {self.id}: remediation_minutes must be > 0")
        if self.health_penalty < 0:
            raise CatalogError(f"rule {self.id}: health_penalty must be >= 0")

    def param(self, name: str) -> Any:
        try:
            return self.params[name]
        except KeyError:
            raise CatalogError(f"rule {self.id}: missing parameter '{name}'") from None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.id,
            "tier": self.tier,
            "severity": self.severity,
            "remediation_minutes": self.remediation_minutes,
            "health_penalty": self.health_penalty,
        }
        if self.health_cap is not None:
            out["health_cap"] = self.health_cap
        out["params"] = dict(self.params)
        return out


class Catalog:
    """Immutable, ordered collection of RuleSpecs keyed by id."""

    def __init__(self, rules: list[RuleSpec]) -> None:
        by_id: dict[str, RuleSpec] = {}
        for rule in rules:
            if rule.id in by_id:
                raise CatalogError(f"duplicate rule id '{rule.id}'")
            by_id[rule.id] = rule
        self._rules = by_id

    def __iter__(self) -> Iterator[RuleSpec]:
        return iter(self._rules.values())

    def __len__(self) -> int:
        return len(self._rules)

    def __contains__(self, rule_id: object) -> bool:
        return rule_id in self._rules

    def get(self, rule_id: str) -> RuleSpec | None:
        return self._rules.get(rule_id)

    def __getitem__(self, rule_id: str) -> RuleSpec:
        return self._rules[rule_id]

    def tier(self, tier: str) -> list[RuleSpec]:
        return [r for r in self._rules.values() if r.tier == tier]

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Catalog:
        try:
            raw_rules = data["rules"]
        except (KeyError, TypeError):
            raise CatalogError("catalog JSON must be an object with a 'rules' list") from None
        rules = []
        for raw in raw_rules:
            try:
                rules.append(
                    RuleSpec(
                        id=raw["id"],
                        tier=raw["tier"],
                        severity=raw["severity"],
                        remediation_minutes=raw["remediation_minutes"],
                        health_penalty=raw.get("health_penalty", 0.0),
                        health_cap=raw.get("health_cap"),
                        params=dict(raw.get("params", {})),
                    )
                )
            except KeyError as exc:
                raise CatalogError(f"rule entry missing key {exc}") from None
        return cls(rules)

    def to_json(self) -> dict[str, Any]:
        return {"rules": [r.to_json() for r in self]}


def load_catalog(path: str | None = None) -> Catalog:
    """Load a catalog file, or the packaged default when ``path`` is None."""
    if path is None:
        text = resources.files("maintbench").joinpath("data/default_catalog.json").read_text(
            encoding="utf-8"
        )
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from None
    return Catalog.from_json(data)


_DEFAULT: Catalog | None = None


def default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_catalog()
    return _DEFAULT
