"""Discrete AdaBoost over decision stumps, with stratified k-fold cross-validation.

Labels are booleans (True = maintainable) at the API surface and +1/-1
internally. A stump votes ``polarity`` when ``x[feature] > threshold`` and
``-polarity`` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bench import UC1, UC2, Scores, evaluate

_TIE_TOL = 1e-12


class LearnerError(Exception):
    pass


class ClassTooSmall(LearnerError):
    pass


class DegenerateData(LearnerError):
    pass


class DimensionMismatch(LearnerError):
    pass


@dataclass(frozen=True)
class LearnerConfig:
    n_estimators: int = 150
    learning_rate: float = 0.5
    folds: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be > 0")
        if self.folds < 2:
            raise ValueError("folds must be >= 2")


@dataclass(frozen=True)
class Stump:
    feature: int
    threshold: float
    polarity: int

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.where(X[:, self.feature] > self.threshold, self.polarity, -self.polarity)


@dataclass
class BoostModel:
    stumps: list[Stump] = field(default_factory=list)
    alphas: list[float] = field(default_factory=list)
    n_features: int = 0
    # Diagnostics recorded during training, one entry per accepted round.
    errors: list[float] = field(default_factory=list)
    weight_sums: list[float] = field(default_factory=list)
    exp_losses: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.stumps)

    def decision(self, X: np.ndarray) -> np.ndarray:
        X = _as_matrix(X)
        if X.shape[1] != self.n_features:
            raise DimensionMismatch(f"model expects {self.n_features} features, got {X.shape[1]}")
        total = np.zeros(X.shape[0])
        for stump, alpha in zip(self.stumps, self.alphas):
            total += alpha * stump.predict(X)
        return total

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        """Weighted vote mapped to [0, 1]; 0.5 is an even split."""
        norm = sum(self.alphas)
        return (self.decision(X) / norm + 1.0) / 2.0

    def predict(self, X: np.ndarray, cutoff: float = 0.5) -> np.ndarray:
        return self.predict_score(X) >= cutoff


def _as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    return X


def _signed(y) -> np.ndarray:
    y = np.asarray(y)
    if y.dtype == bool:
        return np.where(y, 1, -1)
    return np.where(y > 0, 1, -1)


def best_stump(X: np.ndarray, y: np.ndarray, w: np.ndarray) -> tuple[Stump, float] | None:
    """Minimum weighted-error stump over all features and sample midpoints.

    Ties go to the lowest feature index, then the lowest threshold, then
    polarity +1. Returns None if no feature has two distinct values.
    """
    best: tuple[float, Stump] | None = None
    pos_w = w * (y > 0)
    neg_w = w * (y < 0)
    total_pos = pos_w.sum()
    total_neg = neg_w.sum()
    for j in range(X.shape[1]):
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        # candidate split after position i (between xs[i] and xs[i+1])
        gaps = np.flatnonzero(xs[1:] > xs[:-1])
        if gaps.size == 0:
            continue
        left_pos = np.cumsum(pos_w[order])[gaps]
        left_neg = np.cumsum(neg_w[order])[gaps]
        # polarity +1 predicts +1 right of the split
        err_plus = left_pos + (total_neg - left_neg)
        err_minus = left_neg + (total_pos - left_pos)
        errs = np.minimum(err_plus, err_minus)
        feat_min = errs.min()
        if best is not None and feat_min >= best[0] - _TIE_TOL:
            continue
        k = int(np.flatnonzero(errs <= feat_min + _TIE_TOL)[0])
        polarity = 1 if err_plus[k] <= err_minus[k] + _TIE_TOL else -1
        i = gaps[k]
        threshold = (xs[i] + xs[i + 1]) / 2.0
        best = (float(feat_min), Stump(j, float(threshold), polarity))
    if best is None:
        return None
    return best[1], best[0]


def train(X, y, config: LearnerConfig | None = None) -> BoostModel:
    config = config or LearnerConfig()
    X = _as_matrix(X)
    ys = _signed(y)
    if X.shape[0] != ys.shape[0]:
        raise DimensionMismatch("X and y have different lengths")
    if not np.all(np.isfinite(X)):
        raise DegenerateData("features contain non-finite values")
    n_pos = int((ys > 0).sum())
    if n_pos == 0 or n_pos == len(ys):
        raise DegenerateData("all labels are identical")
    n = X.shape[0]
    w = np.full(n, 1.0 / n)
    model = BoostModel(n_features=X.shape[1])
    margin = np.zeros(n)
    for _ in range(config.n_estimators):
        found = best_stump(X, ys, w)
        if found is None:
            break
        stump, _ = found
        h = stump.predict(X)
        eps = float(w[h != ys].sum())
        if eps >= 0.5:
            break
        alpha = config.learning_rate * 0.5 * math.log((1.0 - eps) / max(eps, 1e-10))
        model.stumps.append(stump)
        model.alphas.append(alpha)
        model.errors.append(eps)
        margin += alpha * ys * h
        model.exp_losses.append(float(np.mean(np.exp(-margin))))
        if eps == 0.0:
            model.weight_sums.append(float(w.sum()))
            break
        w = w * np.exp(-alpha * ys * h)
        w /= w.sum()
        model.weight_sums.append(float(w.sum()))
    if not model.stumps:
        raise DegenerateData("no stump does better than chance")
    return model


def stratified_folds(labels: Sequence[bool], k: int = 5, seed: int = 0) -> list[np.ndarray]:
    """Shuffled stratified partition into ``k`` index arrays.

    Each class is shuffled and dealt round-robin; the deal continues across
    classes so fold sizes differ by at most one.
    """
    y = np.asarray(labels, dtype=bool)
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for cls in (True, False):
        idx = np.flatnonzero(y == cls)
        if len(idx) < k:
            raise ClassTooSmall(f"class {cls} has {len(idx)} samples, fewer than {k} folds")
        for i in rng.permutation(idx):
            folds[cursor % k].append(int(i))
            cursor += 1
    return [np.array(sorted(f), dtype=int) for f in folds]


@dataclass(frozen=True)
class FoldReport:
    acc: float
    uc1: Scores
    uc2: Scores


@dataclass(frozen=True)
class CrossValidation:
    folds: list[FoldReport]
    oof_scores: np.ndarray
    acc: float
    uc1_pr: float
    uc1_rc: float
    uc1_f1: float
    uc2_pr: float
    uc2_rc: float
    uc2_f1: float
    uc2_f05: float


def _mean(values) -> float:
    # Undefined precision/recall in a fold counts as 0 in the average.
    return float(np.mean([0.0 if v is None else v for v in values]))


def cross_validate(X, y, config: LearnerConfig | None = None) -> CrossValidation:
    """Train on k-1 folds, score the held-out fold, average the fold metrics.

    Out-of-fold scores are pooled so a single ROC curve can be drawn.
    """
    config = config or LearnerConfig()
    X = _as_matrix(X)
    y = np.asarray(y, dtype=bool)
    folds = stratified_folds(y, config.folds, config.seed)
    oof = np.full(len(y), np.nan)
    reports = []
    for held in folds:
        train_mask = np.ones(len(y), dtype=bool)
        train_mask[held] = False
        model = train(X[train_mask], y[train_mask], config)
        scores = model.predict_score(X[held])
        oof[held] = scores
        preds = {int(i): bool(s >= 0.5) for i, s in zip(held, scores)}
        truth = {int(i): bool(y[i]) for i in held}
        _, s1 = evaluate(preds, truth, UC1, beta=1.0)
        _, s2 = evaluate(preds, truth, UC2, beta=0.5)
        reports.append(FoldReport(s1.acc, s1, s2))
    return CrossValidation(
        folds=reports,
        oof_scores=oof,
        acc=_mean(r.acc for r in reports),
        uc1_pr=_mean(r.uc1.pr for r in reports),
        uc1_rc=_mean(r.uc1.rc for r in reports),
        uc1_f1=_mean(r.uc1.f1 for r in reports),
        uc2_pr=_mean(r.uc2.pr for r in reports),
        uc2_rc=_mean(r.uc2.rc for r in reports),
        uc2_f1=_mean(r.uc2.f1 for r in reports),
        uc2_f05=_mean(r.uc2.f_beta for r in reports),
    )
