"""Convex-hull critical points of an ecdf graph.

The lower chain of the hull of the step-top points (x_i, F(x_i)) gives the
gcm vertices, the upper chain the lcm vertices. Vertex selection runs on
integer cumulative weights so collinearity is decided without rounding from
the division by N. Interior points lying exactly on a chord are dropped
(strict turn test), which keeps uniform stretches as single segments.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dataset import Dataset, Ecdf

__all__ = ["PointKind", "CriticalPoint", "GLSet", "gcm_points", "lcm_points", "gl_set"]


class PointKind(Enum):
    GCM = "gcm"
    LCM = "lcm"
    BOTH = "both"


@dataclass(frozen=True)
class CriticalPoint:
    x: float
    f: float
    kind: PointKind


@dataclass(frozen=True)
class GLSet:
    """Ordered union of gcm and lcm vertices with per-point kind tags."""

    points: tuple[CriticalPoint, ...]
    max_gcm: float  # largest gcm x excluding the dataset maximum
    min_lcm: float  # smallest lcm x excluding the dataset minimum

    def xs(self, kind: PointKind) -> list[float]:
        if kind is PointKind.BOTH:
            return [p.x for p in self.points]
        return [p.x for p in self.points if p.kind is kind or p.kind is PointKind.BOTH]


def _chain_scan(x: list, y: list, idx: list[int], lower: bool) -> list[int]:
    """Monotone-chain scan over pre-sorted points, strict turn test."""
    out: list[int] = []
    sign = 1.0 if lower else -1.0
    for i in idx:
        xi = x[i]
        yi = y[i]
        while len(out) >= 2:
            j = out[-1]
            k = out[-2]
            if sign * ((x[j] - x[k]) * (yi - y[k]) - (y[j] - y[k]) * (xi - x[k])) <= 0.0:
                out.pop()
            else:
                break
        out.append(i)
    return out


def _prefilter(x: np.ndarray, y: np.ndarray, lower: bool) -> np.ndarray:
    """Drop points that provably are not strict hull vertices.

    A strict vertex of the lower (upper) hull of the current sequence makes a
    strict left (right) turn with its immediate neighbours, so points failing
    that test can be removed; repeating the pass keeps the hull invariant and
    shrinks the sequence geometrically on noisy data.
    """
    idx = np.arange(x.size)
    sign = 1.0 if lower else -1.0
    for _ in range(60):
        if idx.size <= 4096:
            break
        xs = x[idx]
        ys = y[idx]
        cross = sign * ((xs[1:-1] - xs[:-2]) * (ys[2:] - ys[:-2])
                        - (ys[1:-1] - ys[:-2]) * (xs[2:] - xs[:-2]))
        keep = np.ones(idx.size, dtype=bool)
        keep[1:-1] = cross > 0.0
        if keep.all():
            break
        idx = idx[keep]
    return idx


def _hull_chains(x: np.ndarray, y: np.ndarray) -> tuple[list[int], list[int]]:
    """Lower and upper hull index chains of points already sorted by x.

    Lower-chain slopes strictly increase, upper-chain slopes strictly
    decrease; collinear interior points are excluded.
    """
    n = len(x)
    if n <= 2:
        idx = list(range(n))
        return idx, idx
    if n <= 4096:
        xs = x.tolist()
        ys = y.tolist()
        rng = list(range(n))
        return _chain_scan(xs, ys, rng, True), _chain_scan(xs, ys, rng, False)
    xs = x.tolist()
    ys = y.tolist()
    low_idx = _prefilter(x, y, True).tolist()
    up_idx = _prefilter(x, y, False).tolist()
    return _chain_scan(xs, ys, low_idx, True), _chain_scan(xs, ys, up_idx, False)


def _range_indices(d: Dataset, lo: float, hi: float) -> tuple[int, int]:
    if lo >= hi:
        raise ValueError("degenerate interval")
    i0 = int(np.searchsorted(d.values, lo, side="left"))
    i1 = int(np.searchsorted(d.values, hi, side="right"))
    if i1 - i0 < 2:
        raise ValueError("degenerate interval")
    return i0, i1


def hull_indices(d: Dataset, cumw: np.ndarray, i0: int, i1: int) -> tuple[list[int], list[int]]:
    """Lower/upper chain indices (absolute) for the value range [i0, i1)."""
    lower, upper = _hull_chains(d.values[i0:i1], cumw[i0:i1].astype(np.float64))
    return [i + i0 for i in lower], [i + i0 for i in upper]


def gcm_points(e: Ecdf, lo: float, hi: float) -> np.ndarray:
    """Vertices of the greatest convex minorant of the ecdf over [lo, hi]."""
    i0, i1 = _range_indices(e.dataset, lo, hi)
    lower, _ = hull_indices(e.dataset, e.cumw, i0, i1)
    return e.dataset.values[lower]


def lcm_points(e: Ecdf, lo: float, hi: float) -> np.ndarray:
    """Vertices of the least concave majorant of the ecdf over [lo, hi]."""
    i0, i1 = _range_indices(e.dataset, lo, hi)
    _, upper = hull_indices(e.dataset, e.cumw, i0, i1)
    return e.dataset.values[upper]


def gl_set(e: Ecdf) -> GLSet:
    """Merged, ordered gcm/lcm vertex set over the full data range."""
    d = e.dataset
    if d.nvalues < 2:
        raise ValueError("degenerate interval")
    lower, upper = hull_indices(d, e.cumw, 0, d.nvalues)
    gset = set(lower)
    lset = set(upper)
    points = []
    for i in sorted(gset | lset):
        if i in gset and i in lset:
            kind = PointKind.BOTH
        elif i in gset:
            kind = PointKind.GCM
        else:
            kind = PointKind.LCM
        points.append(CriticalPoint(float(d.values[i]), float(e.cum[i]), kind))
    max_gcm = float(d.values[lower[-2]])
    min_lcm = float(d.values[upper[1]])
    return GLSet(tuple(points), max_gcm, min_lcm)
