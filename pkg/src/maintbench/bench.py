"""Benchmark harness: score prediction approaches as binary classifiers.

Two orientations are evaluated. In UC1 the positive class is "maintainable"
(the majority); UC2 inverts both the ground truth and the predictions so the
positive class is "unmaintainable" and a false positive is a file wrongly
flagged.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

UC1 = "UC1"
UC2 = "UC2"
USE_CASES = (UC1, UC2)


class BenchError(Exception):
    pass


class MalformedRow(BenchError):
    pass


class DuplicatePath(BenchError):
    pass


class OrdinalOutOfRange(BenchError):
    pass


class PathMismatch(BenchError):
    def __init__(self, message: str, missing: Sequence[str] = (), extra: Sequence[str] = ()):
        super().__init__(message)
        self.missing = list(missing)
        self.extra = list(extra)


class EmptyCorpus(BenchError):
    pass


class UnsortedPoints(BenchError):
    pass


# -- labels ------------------------------------------------------------------


@dataclass(frozen=True)
class GroundTruthLabel:
    path: str
    project: str
    ordinal: int

    @property
    def maintainable(self) -> bool:
        return self.ordinal <= 1


def load_labels(stream: TextIO) -> list[GroundTruthLabel]:
    """Read ``path,project,ordinal`` rows; ordinal 0 or 1 means maintainable."""
    reader = csv.reader(stream)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise MalformedRow("labels file is empty") from None
    try:
        cols = [header.index(c) for c in ("path", "project", "ordinal")]
    except ValueError:
        raise MalformedRow(f"line 1: header must contain path,project,ordinal; got {header}") from None
    labels: list[GroundTruthLabel] = []
    seen: set[str] = set()
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < len(header):
            raise MalformedRow(f"line {line}: expected {len(header)} columns, got {len(row)}")
        path, project, raw = (row[c].strip() for c in cols)
        if not path:
            raise MalformedRow(f"line {line}: empty path")
        try:
            ordinal = int(raw)
        except ValueError:
            raise MalformedRow(f"line {line}: ordinal '{raw}' is not an integer") from None
        if not 0 <= ordinal <= 3:
            raise OrdinalOutOfRange(f"line {line}: ordinal {ordinal} outside 0..3")
        if path in seen:
            raise DuplicatePath(f"line {line}: duplicate path {path}")
        seen.add(path)
        labels.append(GroundTruthLabel(path, project, ordinal))
    return labels


def load_predictions(stream: TextIO) -> dict[str, float]:
    """Read an external ``path,score`` file (e.g. learner scores produced elsewhere)."""
    reader = csv.DictReader(stream)
    if reader.fieldnames is None or not {"path", "score"} <= set(reader.fieldnames):
        raise MalformedRow("line 1: predictions header must contain path,score")
    scores: dict[str, float] = {}
    for row in reader:
        path = row["path"].strip()
        if path in scores:
            raise DuplicatePath(f"line {reader.line_num}: duplicate path {path}")
        try:
            scores[path] = float(row["score"])
        except ValueError:
            raise MalformedRow(f"line {reader.line_num}: score '{row['score']}' is not a number") from None
    return scores


# -- approaches --------------------------------------------------------------


class Direction(str, enum.Enum):
    """How a metric value is turned into a 'maintainable' verdict at a threshold."""

    AT_LEAST = ">="  # high is good; maintainable iff value >= threshold
    AT_MOST = "<="  # low is good; maintainable iff value <= threshold
    BELOW = "<"  # low is good, strict; maintainable iff value < threshold


@dataclass(frozen=True)
class ApproachSpec:
    id: str
    name: str
    metric_source: str
    direction: Direction
    default_threshold: float
    # (lo, hi, step); hi=None extends the grid to cover the largest observed value.
    sweep_grid: tuple[float, float | None, float]

    def __post_init__(self) -> None:
        lo, hi, step = self.sweep_grid
        if not step > 0:
            raise ValueError(f"approach {self.id}: grid step must be > 0")
        if self.default_threshold < lo or (hi is not None and self.default_threshold > hi):
            raise ValueError(f"approach {self.id}: default threshold outside grid range")


APPROACHES: dict[str, ApproachSpec] = {
    spec.id: spec
    for spec in (
        ApproachSpec("A", "AdaBoost learner", "learner_score", Direction.AT_LEAST, 0.5, (0.0, 1.0, 0.01)),
        ApproachSpec("B", "Health score", "health_value", Direction.AT_LEAST, 9.0, (1.0, 10.0, 0.1)),
        ApproachSpec("C", "LoC baseline", "code_lines", Direction.AT_MOST, 275, (0.0, None, 10.0)),
        ApproachSpec("D", "Maintainability Index", "mi", Direction.AT_LEAST, 20, (0.0, 100.0, 1.0)),
        ApproachSpec("E", "TD Time", "td_time", Direction.BELOW, 189, (0.0, None, 5.0)),
        ApproachSpec("G", "TD Ratio", "td_ratio", Direction.AT_MOST, 0.05, (0.0, None, 0.005)),
    )
}


@dataclass(frozen=True)
class ReferenceBaselines:
    """Average human expert agreement with the consensus label (UC1 only)."""

    id: str = "F"
    name: str = "Average human expert"
    acc: float = 0.70
    pr: float = 0.88
    rc: float = 0.88
    f1: float = 0.88
    auc: float = 0.83


HUMAN_BASELINE = ReferenceBaselines()


def classify(value: float, spec: ApproachSpec, threshold: float | None = None) -> bool:
    """True when the approach calls the file maintainable."""
    t = spec.default_threshold if threshold is None else threshold
    if spec.direction is Direction.AT_LEAST:
        return value >= t
    if spec.direction is Direction.AT_MOST:
        return value <= t
    return value < t


# -- scores ------------------------------------------------------------------


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int
    use_case: str = UC1

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class Scores:
    """Undefined precision/recall (zero denominator) is None, never 0 or 1."""

    acc: float
    pr: float | None
    rc: float | None
    f1: float
    f_beta: float
    beta: float


def f_beta(pr: float | None, rc: float | None, beta: float = 1.0) -> float:
    if beta <= 0:
        raise ValueError("beta must be > 0")
    if pr is None or rc is None:
        return 0.0
    b2 = beta * beta
    denom = b2 * pr + rc
    if denom == 0:
        return 0.0
    return (1 + b2) * pr * rc / denom


def scores_from_matrix(cm: ConfusionMatrix, beta: float = 1.0) -> Scores:
    n = cm.n
    if n == 0:
        raise EmptyCorpus("no files to evaluate")
    pr = cm.tp / (cm.tp + cm.fp) if cm.tp + cm.fp else None
    rc = cm.tp / (cm.tp + cm.fn) if cm.tp + cm.fn else None
    return Scores(
        acc=(cm.tp + cm.tn) / n,
        pr=pr,
        rc=rc,
        f1=f_beta(pr, rc, 1.0),
        f_beta=f_beta(pr, rc, beta),
        beta=beta,
    )


def _truth_map(labels: Mapping[str, bool] | Iterable[GroundTruthLabel]) -> dict[str, bool]:
    if isinstance(labels, Mapping):
        return dict(labels)
    return {lab.path: lab.maintainable for lab in labels}


def confusion(
    predictions: Mapping[str, bool],
    labels: Mapping[str, bool] | Iterable[GroundTruthLabel],
    use_case: str = UC1,
) -> ConfusionMatrix:
    """``predictions`` and ``labels`` both map path -> maintainable."""
    if use_case not in USE_CASES:
        raise ValueError(f"use_case must be one of {USE_CASES}")
    truth = _truth_map(labels)
    if set(predictions) != set(truth):
        missing = sorted(set(truth) - set(predictions))
        extra = sorted(set(predictions) - set(truth))
        raise PathMismatch(
            f"{len(missing)} labeled paths without prediction, {len(extra)} predictions without label",
            missing,
            extra,
        )
    tp = fp = tn = fn = 0
    invert = use_case == UC2
    for path, actual in truth.items():
        predicted = predictions[path]
        if invert:
            actual, predicted = not actual, not predicted
        if predicted and actual:
            tp += 1
        elif predicted:
            fp += 1
        elif actual:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp, fp, tn, fn, use_case)


def evaluate(
    predictions: Mapping[str, bool],
    labels: Mapping[str, bool] | Iterable[GroundTruthLabel],
    use_case: str = UC1,
    beta: float = 1.0,
) -> tuple[ConfusionMatrix, Scores]:
    cm = confusion(predictions, labels, use_case)
    return cm, scores_from_matrix(cm, beta)


# -- ROC ---------------------------------------------------------------------


@dataclass(frozen=True)
class RocPoint:
    threshold: float | None  # None for the synthetic (0,0)/(1,1) endpoints
    fpr: float
    tpr: float


@dataclass(frozen=True)
class RocCurve:
    approach: str
    use_case: str
    points: tuple[RocPoint, ...]
    auc: float | None
    grid_size: int = 0


def sweep_thresholds(spec: ApproachSpec, values: Iterable[float] = ()) -> list[float]:
    lo, hi, step = spec.sweep_grid
    if hi is None:
        top = max(values, default=lo)
        hi = lo + math.ceil(round((top - lo) / step, 9)) * step if top > lo else lo
    count = int(round((hi - lo) / step)) + 1
    return [round(lo + i * step, 10) for i in range(count)]


def _rates(
    values: Mapping[str, float], truth: Mapping[str, bool], spec: ApproachSpec, threshold: float, use_case: str
) -> tuple[float, float]:
    preds = {p: classify(v, spec, threshold) for p, v in values.items()}
    cm = confusion(preds, truth, use_case)
    pos = cm.tp + cm.fn
    neg = cm.fp + cm.tn
    tpr = cm.tp / pos if pos else 0.0
    fpr = cm.fp / neg if neg else 0.0
    return fpr, tpr


def _sweep_rates(
    values: Mapping[str, float],
    truth: Mapping[str, bool],
    spec: ApproachSpec,
    grid: Sequence[float],
    use_case: str,
) -> list[tuple[float, float]]:
    """(fpr, tpr) for every grid threshold at once; same verdicts as classify()."""
    if set(values) != set(truth):
        missing = sorted(set(truth) - set(values))
        extra = sorted(set(values) - set(truth))
        raise PathMismatch("values and labels cover different paths", missing, extra)
    paths = sorted(values)
    v = np.array([values[p] for p in paths], dtype=float)[None, :]
    t = np.asarray(grid, dtype=float)[:, None]
    if spec.direction is Direction.AT_LEAST:
        maintainable = v >= t
    elif spec.direction is Direction.AT_MOST:
        maintainable = v <= t
    else:
        maintainable = v < t
    actual = np.array([truth[p] for p in paths], dtype=bool)[None, :]
    if use_case == UC2:
        maintainable = ~maintainable
        actual = ~actual
    pos = int(actual.sum())
    neg = actual.size - pos
    tp = (maintainable & actual).sum(axis=1)
    fp = (maintainable & ~actual).sum(axis=1)
    tpr = tp / pos if pos else np.zeros(len(grid))
    fpr = fp / neg if neg else np.zeros(len(grid))
    return [(float(a), float(b)) for a, b in zip(fpr, tpr)]


def roc_point(
    values: Mapping[str, float],
    labels: Mapping[str, bool] | Iterable[GroundTruthLabel],
    spec: ApproachSpec,
    threshold: float | None = None,
    use_case: str = UC1,
) -> RocPoint:
    """The (fpr, tpr) a single threshold yields; used for default-threshold markers."""
    t = spec.default_threshold if threshold is None else threshold
    fpr, tpr = _rates(values, _truth_map(labels), spec, t, use_case)
    return RocPoint(t, fpr, tpr)


def roc_sweep(
    values: Mapping[str, float],
    labels: Mapping[str, bool] | Iterable[GroundTruthLabel],
    spec: ApproachSpec,
    use_case: str = UC1,
) -> RocCurve:
    """Grid-swept ROC curve; AUC is None if either class is absent."""
    truth = _truth_map(labels)
    if not values:
        raise EmptyCorpus("no files to sweep")
    grid = sweep_thresholds(spec, values.values())
    raw = [RocPoint(t, f, r) for t, (f, r) in zip(grid, _sweep_rates(values, truth, spec, grid, use_case))]
    raw.append(RocPoint(None, 0.0, 0.0))
    raw.append(RocPoint(None, 1.0, 1.0))
    seen: set[tuple[float, float]] = set()
    unique: list[RocPoint] = []
    for pt in raw:
        key = (pt.fpr, pt.tpr)
        if key not in seen:
            seen.add(key)
            unique.append(pt)
    unique.sort(key=lambda p: (p.fpr, p.tpr))
    n_pos = sum(1 for v in truth.values() if v == (use_case == UC1))
    degenerate = n_pos == 0 or n_pos == len(truth)
    auc = None if degenerate else auc_trapezoid(unique)
    return RocCurve(spec.id, use_case, tuple(unique), auc, grid_size=len(grid))


def auc_trapezoid(points: Sequence[RocPoint] | Sequence[tuple[float, float]]) -> float:
    """Composite trapezoidal area under (fpr, tpr) points sorted by fpr."""
    xs: list[float] = []
    ys: list[float] = []
    for pt in points:
        if isinstance(pt, RocPoint):
            xs.append(pt.fpr)
            ys.append(pt.tpr)
        else:
            xs.append(pt[0])
            ys.append(pt[1])
    for a, b in zip(xs, xs[1:]):
        if b < a:
            raise UnsortedPoints("ROC points must be sorted by fpr")
    area = 0.0
    for i in range(len(xs) - 1):
        area += (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]) / 2.0
    return area


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class EvalReport:
    approach: str
    name: str
    threshold: float | None
    acc: float
    uc1: Scores
    uc2: Scores
    auc: float | None


def evaluate_approach(
    values: Mapping[str, float],
    labels: Mapping[str, bool] | Iterable[GroundTruthLabel],
    spec: ApproachSpec,
    threshold: float | None = None,
) -> EvalReport:
    truth = _truth_map(labels)
    t = spec.default_threshold if threshold is None else threshold
    preds = {p: classify(v, spec, t) for p, v in values.items()}
    _, s1 = evaluate(preds, truth, UC1, beta=1.0)
    _, s2 = evaluate(preds, truth, UC2, beta=0.5)
    curve = roc_sweep(values, truth, spec, UC1)
    return EvalReport(spec.id, spec.name, t, s1.acc, s1, s2, curve.auc)


def sort_reports(reports: Iterable[EvalReport]) -> list[EvalReport]:
    """Descending AUC, ties (and undefined AUC last) broken by approach id."""
    return sorted(
        reports,
        key=lambda r: (r.auc is None, -(r.auc or 0.0), r.approach),
    )


REPORT_COLUMNS = (
    "id",
    "approach",
    "threshold",
    "acc",
    "uc1_pr",
    "uc1_rc",
    "uc1_f1",
    "uc2_pr",
    "uc2_rc",
    "uc2_f1",
    "uc2_f05",
    "auc",
)


def fmt(value: float | None, digits: int = 3) -> str:
    if value is None:
        return "NA"
    return f"{value:.{digits}f}"


def report_rows(reports: Sequence[EvalReport], include_baseline: bool = True) -> list[list[str]]:
    entries: list[tuple[float | None, str, list[str]]] = []
    for r in reports:
        entries.append(
            (
                r.auc,
                r.approach,
                [
                    r.approach,
                    r.name,
                    "" if r.threshold is None else f"{r.threshold:g}",
                    fmt(r.acc),
                    fmt(r.uc1.pr),
                    fmt(r.uc1.rc),
                    fmt(r.uc1.f1),
                    fmt(r.uc2.pr),
                    fmt(r.uc2.rc),
                    fmt(r.uc2.f1),
                    fmt(r.uc2.f_beta),
                    fmt(r.auc),
                ],
            )
        )
    if include_baseline:
        b = HUMAN_BASELINE
        entries.append(
            (
                b.auc,
                b.id,
                [b.id, b.name, "", fmt(b.acc), fmt(b.pr), fmt(b.rc), fmt(b.f1),
                 "NA", "NA", "NA", "NA", fmt(b.auc)],
            )
        )
    entries.sort(key=lambda e: (e[0] is None, -(e[0] or 0.0), e[1]))
    return [row for _, _, row in entries]
