"""Naive Bayes classification with per-feature class densities.

Feature densities are either hierarchical uniform-mixture models (fit per
class and feature) or single Gaussians; posteriors multiply the per-feature
densities with class-frequency priors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import make_dataset
from .udmm import DENSITY_FLOOR, UDMM, fit_udmm

__all__ = ["NBModel", "fit_nb", "predict", "kfold_accuracy", "read_csv_table"]


@dataclass(frozen=True)
class NBModel:
    classes: np.ndarray          # sorted original class labels
    priors: np.ndarray           # class frequencies, sum 1
    mode: str                    # "udmm" or "gaussian"
    feature_models: list         # [class][feature] -> UDMM or (mu, sigma)

    @property
    def nfeatures(self) -> int:
        return len(self.feature_models[0])

    def class_log_scores(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        scores = np.empty((X.shape[0], self.classes.size))
        for c in range(self.classes.size):
            total = np.full(X.shape[0], math.log(self.priors[c]))
            for f in range(self.nfeatures):
                m = self.feature_models[c][f]
                if isinstance(m, UDMM):
                    dens = m.pdf(X[:, f])
                else:
                    mu, sigma = m
                    z = (X[:, f] - mu) / sigma
                    dens = np.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))
                total = total + np.log(np.maximum(dens, DENSITY_FLOOR))
            scores[:, c] = total
        return scores


def fit_nb(features, labels, mode: str = "udmm", alpha: float = 0.01) -> NBModel:
    """Fit per-(class, feature) densities with class-frequency priors."""
    X = np.atleast_2d(np.asarray(features, dtype=np.float64))
    y = np.asarray(labels).ravel()
    if X.shape[0] != y.size:
        raise ValueError("features and labels must have equal length")
    if mode not in ("udmm", "gaussian"):
        raise ValueError("mode must be 'udmm' or 'gaussian'")
    classes, counts = np.unique(y, return_counts=True)
    if classes.size < 2:
        raise ValueError("need at least 2 classes")
    if counts.min() < 4:
        raise ValueError("every class needs at least 4 rows")
    feat_range = X.max(axis=0) - X.min(axis=0)
    models = []
    for c in classes:
        rows = X[y == c]
        per_class = []
        for f in range(X.shape[1]):
            col = rows[:, f]
            if mode == "udmm":
                per_class.append(fit_udmm(make_dataset(col), alpha))
            else:
                mu = float(col.mean())
                sigma = float(col.std(ddof=1))
                floor = 1e-9 * float(feat_range[f])
                sigma = max(sigma, floor)
                if sigma <= 0.0:
                    raise ValueError("zero variance")
                per_class.append((mu, sigma))
        models.append(per_class)
    return NBModel(classes, counts / y.size, mode, models)


def predict(model: NBModel, rows) -> np.ndarray:
    """Most probable class per row; ties resolve to the smallest class."""
    scores = model.class_log_scores(rows)
    return model.classes[np.argmax(scores, axis=1)]


def kfold_accuracy(features, labels, k: int = 10, mode: str = "udmm",
                   alpha: float = 0.01, seed=None) -> tuple[float, float]:
    """Stratified k-fold cross-validation; returns (mean, std) of fold accuracy."""
    X = np.atleast_2d(np.asarray(features, dtype=np.float64))
    y = np.asarray(labels).ravel()
    if y.size < k:
        raise ValueError("fewer rows than folds")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for c in np.unique(y):
        idx = np.nonzero(y == c)[0]
        rng.shuffle(idx)
        for pos, row in enumerate(idx):
            folds[pos % k].append(int(row))
    accs = []
    for f in range(k):
        test_idx = np.array(sorted(folds[f]), dtype=np.int64)
        train_mask = np.ones(y.size, dtype=bool)
        train_mask[test_idx] = False
        model = fit_nb(X[train_mask], y[train_mask], mode=mode, alpha=alpha)
        pred = predict(model, X[test_idx])
        accs.append(float((pred == y[test_idx]).mean()))
    return float(np.mean(accs)), float(np.std(accs))


def read_csv_table(path) -> tuple[np.ndarray, np.ndarray]:
    """CSV with numeric feature columns and the class label last; a single
    non-numeric first line is treated as a header."""
    rows = []
    labels = []
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ValueError("empty table")
    start = 0
    try:
        [float(v) for v in lines[0].split(",")]
    except ValueError:
        start = 1
    for ln in lines[start:]:
        parts = ln.split(",")
        rows.append([float(v) for v in parts[:-1]])
        labels.append(parts[-1].strip())
    X = np.asarray(rows, dtype=np.float64)
    try:
        y = np.asarray([float(v) for v in labels])
        if np.allclose(y, np.round(y)):
            y = y.astype(np.int64)
    except ValueError:
        _, y = np.unique(labels, return_inverse=True)
    return X, y
