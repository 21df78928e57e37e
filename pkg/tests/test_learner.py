import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maintbench.learner import (
    BoostModel,
    ClassTooSmall,
    DegenerateData,
    DimensionMismatch,
    LearnerConfig,
    Stump,
    best_stump,
    cross_validate,
    stratified_folds,
    train,
)


def brute_force_best_stump_accuracy(X, y):
    """Best unweighted accuracy of any single axis-aligned stump."""
    best = 0.0
    for j in range(X.shape[1]):
        xs = np.unique(X[:, j])
        cuts = np.concatenate([[xs[0] - 1], (xs[:-1] + xs[1:]) / 2])
        for t, pol in itertools.product(cuts, (1, -1)):
            pred = np.where(X[:, j] > t, pol, -pol) > 0
            best = max(best, float(np.mean(pred == y)))
    return best


def xor_corpus():
    rng = np.random.default_rng(1)
    parts = []
    for (sx, sy), n in zip([(1, 1), (-1, -1), (1, -1), (-1, 1)], (30, 20, 25, 15)):
        pts = rng.uniform(0.1, 1.0, size=(n, 2)) * [sx, sy]
        parts.append((pts, np.full(n, sx * sy > 0)))
    X = np.vstack([p for p, _ in parts])
    y = np.concatenate([lab for _, lab in parts])
    return X, y


def noisy_corpus(seed, n=300, flip=0.1):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 5))
    y = X[:, 0] > 0
    flips = rng.random(n) < flip
    return X, y ^ flips


# -- stumps and training -------------------------------------------------------


def test_separable_one_round():
    X = np.array([[-3.0], [-2.0], [-1.0], [1.0], [2.0], [3.0]])
    y = X[:, 0] > 0
    model = train(X, y)
    assert len(model) == 1
    assert model.stumps[0] == Stump(0, 0.0, 1)
    assert np.all(model.predict(X) == y)


def test_best_stump_tie_breaking():
    # both features separate perfectly: the lower index wins
    X = np.array([[0.0, 0.0], [1.0, 1.0]])
    y = np.array([-1, 1])
    stump, err = best_stump(X, y, np.array([0.5, 0.5]))
    assert stump == Stump(0, 0.5, 1) and err == 0


def test_best_stump_lowest_threshold_on_tie():
    X = np.array([[0.0], [1.0], [2.0]])
    y = np.array([-1, 1, -1])
    stump, _ = best_stump(X, y, np.full(3, 1 / 3))
    assert stump.threshold == 0.5


def test_xor_ensemble_beats_single_stump():
    X, y = xor_corpus()
    model = train(X, y, LearnerConfig())
    ensemble_acc = float(np.mean(model.predict(X) == y))
    assert ensemble_acc > brute_force_best_stump_accuracy(X, y)


def test_weights_and_errors_every_round():
    X, y = xor_corpus()
    model = train(X, y, LearnerConfig(n_estimators=60))
    assert len(model) > 1
    for s in model.weight_sums:
        assert abs(s - 1.0) <= 1e-12
    assert all(e < 0.5 for e in model.errors)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_exponential_loss_non_increasing(seed):
    X, y = noisy_corpus(seed, n=60, flip=0.2)
    model = train(X, y, LearnerConfig(n_estimators=40))
    losses = model.exp_losses
    assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))
    assert all(abs(s - 1.0) <= 1e-12 for s in model.weight_sums)


def test_predict_scores():
    X = np.array([[0.0], [2.0]])
    unanimous = BoostModel([Stump(0, -1.0, 1), Stump(0, -2.0, 1)], [0.3, 0.7], n_features=1)
    assert np.all(unanimous.predict_score(X) == 1.0)
    split = BoostModel([Stump(0, -1.0, 1), Stump(0, -1.0, -1)], [0.5, 0.5], n_features=1)
    assert np.all(split.predict_score(X) == 0.5)
    assert np.all(split.predict(X))
    with pytest.raises(DimensionMismatch):
        split.predict_score(np.zeros((2, 3)))


def test_held_out_point_matches_hand_evaluation():
    X = np.array([[-2.0, 0.0], [-1.0, 1.0], [1.0, 0.0], [2.0, 1.0], [0.5, 5.0]])
    y = np.array([False, False, True, True, True])
    model = train(X, y, LearnerConfig(n_estimators=5))
    x_new = np.array([[0.3, 2.0]])
    votes = sum(a * (s.polarity if x_new[0, s.feature] > s.threshold else -s.polarity)
                for s, a in zip(model.stumps, model.alphas))
    assert model.predict_score(x_new)[0] == pytest.approx((votes / sum(model.alphas) + 1) / 2)


def test_train_rejects_degenerate():
    with pytest.raises(DegenerateData):
        train(np.ones((4, 1)), [True, True, True, True])
    with pytest.raises(DegenerateData):
        train(np.ones((4, 1)), [True, False, True, False])  # no split possible
    with pytest.raises(DimensionMismatch):
        train(np.ones((4, 1)), [True, False])


def test_config_validation():
    with pytest.raises(ValueError):
        LearnerConfig(n_estimators=0)
    with pytest.raises(ValueError):
        LearnerConfig(learning_rate=0)


# -- folds and cross-validation ------------------------------------------------


def test_folds_304():
    labels = np.array([True] * 237 + [False] * 67)
    folds = stratified_folds(labels, 5, seed=0)
    sizes = sorted(len(f) for f in folds)
    assert sizes[0] >= 60 and sizes[-1] <= 61
    for f in folds:
        assert 47 <= labels[f].sum() <= 48
    assert sorted(np.concatenate(folds).tolist()) == list(range(304))


def test_folds_balanced_ten():
    labels = [True, False] * 5
    for f in stratified_folds(labels, 5, seed=4):
        assert sorted(labels[i] for i in f) == [False, True]


def test_folds_deterministic():
    labels = np.array([True] * 30 + [False] * 10)
    a = stratified_folds(labels, 5, seed=9)
    b = stratified_folds(labels, 5, seed=9)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    with pytest.raises(ClassTooSmall):
        stratified_folds([True] * 10 + [False] * 3, 5)


@given(st.integers(5, 60), st.integers(5, 60), st.integers(2, 5), st.integers(0, 999))
def test_folds_partition(n_pos, n_neg, k, seed):
    labels = np.array([True] * n_pos + [False] * n_neg)
    folds = stratified_folds(labels, k, seed)
    assert sorted(np.concatenate(folds).tolist()) == list(range(n_pos + n_neg))
    sizes = [len(f) for f in folds]
    assert max(sizes) - min(sizes) <= 1
    pos = [int(labels[f].sum()) for f in folds]
    assert max(pos) - min(pos) <= 1


def test_cv_deterministic():
    X, y = noisy_corpus(5, n=120)
    a = cross_validate(X, y, LearnerConfig(n_estimators=30, seed=2))
    b = cross_validate(X, y, LearnerConfig(n_estimators=30, seed=2))
    assert a.acc == b.acc and np.array_equal(a.oof_scores, b.oof_scores)


def test_cv_separable():
    rng = np.random.default_rng(0)
    X = rng.uniform(-1, 1, size=(100, 3))
    X[:, 1] += np.where(X[:, 1] > 0, 0.5, -0.5)
    y = X[:, 1] > 0
    cv = cross_validate(X, y, LearnerConfig(n_estimators=20))
    assert cv.acc == 1.0
    assert not np.isnan(cv.oof_scores).any()


def test_cv_held_out_labels_do_not_leak():
    """Each fold's scores come from a model that only saw the other folds' labels."""
    X, y = noisy_corpus(8, n=100)
    config = LearnerConfig(n_estimators=20, seed=1)
    cv = cross_validate(X, y, config)
    for held in stratified_folds(y, config.folds, config.seed):
        rest = np.ones(len(y), dtype=bool)
        rest[held] = False
        model = train(X[rest], y[rest], config)
        assert np.array_equal(model.predict_score(X[held]), cv.oof_scores[held])


def test_cv_noisy_accuracy_interval():
    accs = [cross_validate(*noisy_corpus(100 + s), LearnerConfig(seed=s)).acc for s in range(5)]
    assert 0.85 <= float(np.mean(accs)) <= 0.95
