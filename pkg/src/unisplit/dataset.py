"""Univariate sample representation: weighted distinct values and their ecdf.

Tied raw values are collapsed into integer multiplicities so that quantized
data (for example pixel intensities) keeps its exact histogram shape. Only
bit-identical values are merged; no epsilon snapping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Dataset",
    "Ecdf",
    "PiecewiseLinearCdf",
    "make_dataset",
    "ecdf_eval",
    "pl_eval",
    "read_values",
    "read_value_table",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Dataset:
    """Sorted distinct values with positive integer multiplicities."""

    values: np.ndarray   # float64, strictly increasing
    weights: np.ndarray  # int64, >= 1
    total: int           # sum of weights == raw sample size

    def __post_init__(self):
        if self.values.size == 0:
            raise ValueError("empty dataset")

    @property
    def nvalues(self) -> int:
        return int(self.values.size)

    @property
    def xmin(self) -> float:
        return float(self.values[0])

    @property
    def xmax(self) -> float:
        return float(self.values[-1])

    def subset(self, lo: float, hi: float) -> "Dataset":
        """Values in the closed interval [lo, hi], with their weights."""
        i0 = int(np.searchsorted(self.values, lo, side="left"))
        i1 = int(np.searchsorted(self.values, hi, side="right"))
        if i1 <= i0:
            raise ValueError("empty interval")
        return self.slice(i0, i1)

    def slice(self, i0: int, i1: int) -> "Dataset":
        w = self.weights[i0:i1]
        return Dataset(self.values[i0:i1], w, int(w.sum()))

    def split_at(self, x: float) -> tuple["Dataset", "Dataset"]:
        """Partition into values <= x and values > x. Both sides non-empty."""
        k = int(np.searchsorted(self.values, x, side="right"))
        if k == 0 or k == self.nvalues:
            raise ValueError("split point outside data range")
        return self.slice(0, k), self.slice(k, self.nvalues)


def make_dataset(raw) -> Dataset:
    """Build a Dataset from a raw sequence, collapsing exact ties into weights."""
    arr = np.asarray(raw, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("empty dataset")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite value")
    values, counts = np.unique(arr, return_counts=True)
    return Dataset(_readonly(values), _readonly(counts.astype(np.int64)), int(arr.size))


def merge_datasets(a: Dataset, b: Dataset) -> Dataset:
    """Union of two weighted samples (weights of shared values add up)."""
    values = np.concatenate([a.values, b.values])
    weights = np.concatenate([a.weights, b.weights])
    order = np.argsort(values, kind="mergesort")
    values = values[order]
    weights = weights[order]
    uniq, start = np.unique(values, return_index=True)
    if uniq.size == values.size:
        merged = weights
    else:
        merged = np.add.reduceat(weights, start)
    return Dataset(uniq, merged, int(a.total + b.total))


@dataclass(frozen=True)
class Ecdf:
    """Right-continuous weighted empirical cdf of a Dataset."""

    dataset: Dataset
    cum: np.ndarray = field(default=None)    # float fractions, last exactly 1
    cumw: np.ndarray = field(default=None)   # int64 cumulative weights

    @classmethod
    def of(cls, d: Dataset) -> "Ecdf":
        cumw = np.cumsum(d.weights)
        cum = cumw / d.total
        cum[-1] = 1.0
        return cls(d, _readonly(cum), _readonly(cumw))

    def eval(self, x) -> np.ndarray | float:
        idx = np.searchsorted(self.dataset.values, x, side="right")
        out = np.where(idx > 0, self.cum[np.maximum(idx, 1) - 1], 0.0)
        return float(out) if np.isscalar(x) else out


def ecdf_eval(e: Ecdf, x) -> float:
    """F(x): fraction of the sample <= x."""
    return e.eval(x)


@dataclass(frozen=True)
class PiecewiseLinearCdf:
    """Linear interpolation of cdf values over an ordered knot subset."""

    knots: np.ndarray
    cdfvals: np.ndarray

    def __post_init__(self):
        if self.knots.size < 1 or self.knots.size != self.cdfvals.size:
            raise ValueError("knots and cdfvals must align")

    def eval(self, x) -> np.ndarray | float:
        out = np.interp(x, self.knots, self.cdfvals, left=0.0, right=float(self.cdfvals[-1]))
        out = np.where(np.asarray(x) < self.knots[0], 0.0, out)
        return float(out) if np.isscalar(x) else out


def pl_eval(pl: PiecewiseLinearCdf, x) -> float:
    """PL(x): 0 below the first knot, 1 at and beyond the last."""
    return pl.eval(x)


def read_values(path) -> np.ndarray:
    """One decimal value per line; '#' comment lines and blanks are skipped."""
    vals = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            vals.append(float(line.split(",")[0]))
    return np.asarray(vals, dtype=np.float64)


def read_value_table(path) -> tuple[np.ndarray, np.ndarray | None]:
    """Value file or CSV: first column values, optional second column int labels."""
    vals, labels = [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p for p in line.replace(",", " ").split() if p]
            vals.append(float(parts[0]))
            if len(parts) > 1:
                labels.append(int(float(parts[1])))
    values = np.asarray(vals, dtype=np.float64)
    if labels and len(labels) == len(vals):
        return values, np.asarray(labels, dtype=np.int64)
    return values, None
