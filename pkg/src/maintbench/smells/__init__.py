"""Smell and lint-rule detection driven by a configurable rule catalog."""

from .catalog import SEVERITIES, TIERS, Catalog, CatalogError, RuleSpec, default_catalog, load_catalog
from .detectors import (
    SmellFinding,
    count_assignments,
    detect_lint_rules,
    detect_structural_smells,
    modifiers_in_order,
)
from .duplication import DuplicatePair, detect_duplication, detect_duplication_in_segments

__all__ = [
    "SEVERITIES",
    "TIERS",
    "Catalog",
    "CatalogError",
    "DuplicatePair",
    "RuleSpec",
    "SmellFinding",
    "count_assignments",
    "default_catalog",
    "detect_duplication",
    "detect_duplication_in_segments",
    "detect_lint_rules",
    "detect_structural_smells",
    "load_catalog",
    "modifiers_in_order",
]
