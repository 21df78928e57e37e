"""Per-file analysis pipeline and corpus discovery."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .codemodel import (
    AnalysisError,
    LocCounts,
    SourceUnit,
    StructuralModel,
    adapter_for,
    language_for_path,
)
from .health import HealthScore, health_score
from .metrics import MetricVector, compute_metrics
from .smells import Catalog, SmellFinding, default_catalog, detect_lint_rules, detect_structural_smells
from .sqale import DEFAULT_COST_PER_LINE, SqaleResult, assess

FEATURE_NAMES = (
    "loc",
    "total_lines",
    "comment_lines",
    "cc_file",
    "cc_max",
    "cc_mean",
    "volume",
    "n1",
    "n2",
    "N1",
    "N2",
    "type_count",
    "method_count",
    "field_count",
    "max_params",
    "mean_params",
    "max_nesting",
    "mean_method_lines",
    "max_method_lines",
    "GodClass",
    "GodMethod",
    "LongParameterList",
    "DeepNesting",
    "HighMethodComplexity",
    "DuplicatedBlock",
    "lint_findings",
)


class NoInputFiles(Exception):
    pass


@dataclass(frozen=True)
class AnalysisConfig:
    cost_per_line: float = DEFAULT_COST_PER_LINE
    cc_aggregate: str = "sum"
    catalog: Catalog | None = None


@dataclass
class FileAnalysis:
    path: str
    project: str
    status: str  # "ok" or "error"
    messages: list[str] = field(default_factory=list)
    loc: LocCounts | None = None
    metrics: MetricVector | None = None
    structural: list[SmellFinding] = field(default_factory=list)
    lint: list[SmellFinding] = field(default_factory=list)
    sqale: SqaleResult | None = None
    health: HealthScore | None = None
    features: tuple[float, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def metric(self, source: str) -> float:
        """Per-file number behind each prediction approach."""
        if not self.ok:
            raise ValueError(f"{self.path} was not analyzed")
        assert self.metrics and self.sqale and self.health
        if source == "mi":
            return self.metrics.mi
        if source == "health_value":
            return self.health.value
        if source == "code_lines":
            return float(self.metrics.loc)
        if source == "td_time":
            return self.sqale.td_time_minutes
        if source == "td_ratio":
            return self.sqale.td_ratio
        raise KeyError(source)


def analyze_unit(unit: SourceUnit, config: AnalysisConfig | None = None) -> FileAnalysis:
    config = config or AnalysisConfig()
    catalog = config.catalog or default_catalog()
    result = FileAnalysis(path=unit.path, project=unit.project, status="error")
    try:
        adapter = adapter_for(unit.language)
        loc = adapter.count_loc(unit.text)
        result.loc = loc
        result.messages.extend(loc.diagnostics)
        tokens = adapter.tokenize(unit.text)
        model = adapter.parse_structure(tokens)
    except AnalysisError as exc:
        result.messages.append(f"{type(exc).__name__}: {exc}")
        return result
    metrics = compute_metrics(tokens, loc, model, config.cc_aggregate)
    structural = detect_structural_smells(model, loc, catalog, path=unit.path)
    lint = detect_lint_rules(model, tokens, catalog, path=unit.path)
    result.status = "ok"
    result.metrics = metrics
    result.structural = structural
    result.lint = lint
    result.sqale = assess(lint, loc.code_lines, config.cost_per_line)
    result.health = health_score(structural, catalog)
    result.features = extract_features(loc, metrics, model, structural, lint)
    return result


def extract_features(
    loc: LocCounts,
    metrics: MetricVector,
    model: StructuralModel,
    structural: Sequence[SmellFinding],
    lint: Sequence[SmellFinding],
) -> tuple[float, ...]:
    methods = [m for m in model.methods if m.has_body]
    params = [m.parameter_count for m in model.methods]
    spans = [m.span_lines for m in methods]
    smell_counts = {name: 0 for name in FEATURE_NAMES[19:25]}
    for f in structural:
        if f.rule_id in smell_counts:
            smell_counts[f.rule_id] += 1
    n_methods = len(model.methods)
    values = [
        loc.code_lines,
        loc.total_lines,
        loc.comment_lines,
        metrics.cc_file,
        metrics.cc_max,
        metrics.cc_file / n_methods if n_methods else 0.0,
        metrics.halstead.volume,
        metrics.halstead.n1,
        metrics.halstead.n2,
        metrics.halstead.N1,
        metrics.halstead.N2,
        len(model.all_types()),
        n_methods,
        sum(len(t.fields) for t in model.all_types()),
        max(params, default=0),
        sum(params) / len(params) if params else 0.0,
        max((m.max_nesting_depth for m in methods), default=0),
        sum(spans) / len(spans) if spans else 0.0,
        max(spans, default=0),
        *smell_counts.values(),
        len(lint),
    ]
    return tuple(float(v) for v in values)


def discover(root: str) -> list[SourceUnit]:
    """All supported source files under ``root``, sorted by relative path.

    The first directory component of the relative path becomes the project id
    for nested layouts.
    """
    units = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in sorted(filenames):
            full = os.path.join(dirpath, name)
            rel = os.path.relpath(full, root).replace(os.sep, "/")
            language = language_for_path(rel)
            if language is None:
                continue
            with open(full, encoding="utf-8", errors="replace", newline="") as fh:
                text = fh.read()
            project = rel.split("/", 1)[0] if "/" in rel else ""
            units.append(SourceUnit(path=rel, text=text, project=project, language=language))
    units.sort(key=lambda u: u.path)
    if not units:
        raise NoInputFiles(f"no supported source files under {root}")
    return units


def _analyze_star(args: tuple[SourceUnit, AnalysisConfig]) -> FileAnalysis:
    return analyze_unit(*args)


def analyze_corpus(
    units: Iterable[SourceUnit], config: AnalysisConfig | None = None, jobs: int = 1
) -> list[FileAnalysis]:
    config = config or AnalysisConfig()
    units = list(units)
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_analyze_star, [(u, config) for u in units], chunksize=8))
    else:
        results = [analyze_unit(u, config) for u in units]
    results.sort(key=lambda r: r.path)
    return results
