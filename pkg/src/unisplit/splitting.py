"""Valley-point detection and recursive partition into unimodal subsets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, merge_datasets
from .uutest import SPLIT_FLOOR, Candidate, interior_deviation, uu_test

__all__ = ["MDPoint", "SplitResult", "multimodality_degree", "find_vp", "unisplit", "merge_pass"]


@dataclass(frozen=True)
class MDPoint:
    """Value attaining the maximum ecdf deviation from uniformity on an interval."""

    x: float
    deviation: float


@dataclass(frozen=True)
class SplitResult:
    valley_points: tuple[float, ...]
    subsets: tuple[Dataset, ...]
    labels: np.ndarray  # subset index per distinct value of the input dataset

    @property
    def k(self) -> int:
        return len(self.subsets)

    def labels_for(self, values) -> np.ndarray:
        """Subset index for arbitrary points: index i means vp_{i-1} < x <= vp_i."""
        return np.searchsorted(np.asarray(self.valley_points), np.asarray(values), side="left")


def multimodality_degree(d: Dataset, a: float, b: float) -> MDPoint:
    """Deviation of the ecdf of X(a,b) from the uniform cdf on [a, b].

    The maximum runs over dataset values strictly inside (a, b); ties break
    toward the smaller value.
    """
    if a >= b:
        raise ValueError("degenerate interval")
    i0 = int(np.searchsorted(d.values, a, side="left"))
    i1 = int(np.searchsorted(d.values, b, side="right"))
    if i1 - i0 < 2:
        raise ValueError("degenerate interval")
    cumw = np.cumsum(d.weights)
    base = cumw[i0 - 1] if i0 > 0 else 0
    n = int(cumw[i1 - 1] - base)
    values = d.values[i0:i1]
    u = (values - a) / (b - a)
    cum = (cumw[i0:i1] - base) / n
    interior = (values > a) & (values < b)
    if not interior.any():
        raise ValueError("degenerate interval")
    dev = np.where(interior, np.abs(cum - u), -1.0)
    j = int(np.argmax(dev))
    return MDPoint(float(values[j]), float(dev[j]))


def _rank(c: Candidate) -> tuple:
    return (c.deviation, c.b - c.a, -c.a)


def _gap_vp(d: Dataset, c: Candidate) -> float:
    """Valley point for an interval whose non-uniformity is purely atomic:
    the midpoint of the value gap the uniform cdf overshoots the most."""
    i0 = int(np.searchsorted(d.values, c.a, side="left"))
    i1 = int(np.searchsorted(d.values, c.b, side="right"))
    values = d.values[i0:i1]
    weights = d.weights[i0:i1]
    n = weights.sum()
    u = (values - c.a) / (c.b - c.a)
    prev = np.concatenate([[0.0], np.cumsum(weights)[:-1] / n])
    j = int(np.argmax(u - prev))
    if j == 0:
        return 0.5 * (c.a + c.b)
    return 0.5 * (float(values[j - 1]) + float(values[j]))


def _dodge_values(d: Dataset, vp: float) -> float:
    """Nudge a valley point off an exact dataset value so splits stay strict."""
    i = int(np.searchsorted(d.values, vp, side="left"))
    if i >= d.nvalues or d.values[i] != vp:
        return vp
    moved = 0.5 * (float(d.values[i - 1]) + float(d.values[i + 1]))
    if moved != float(d.values[i]):
        return moved
    return 0.5 * (float(d.values[i - 1]) + float(d.values[i]))


def _vp_from_candidates(d: Dataset, candidates: tuple[Candidate, ...], alpha: float,
                        step: float, depth: int) -> float:
    best = max(candidates, key=_rank)
    sub = d.subset(best.a, best.b)
    if depth < 100 and sub.total < d.total and sub.total >= SPLIT_FLOOR and sub.nvalues > 2:
        sub_out = uu_test(sub, alpha, step)
        if not sub_out.unimodal:
            return _vp_from_candidates(sub, sub_out.candidates, alpha, step, depth + 1)
    if best.md_x is None:
        vp = _gap_vp(d, best)
    elif best.kind == "gcm":
        vp = 0.5 * (best.md_x + best.b)
    else:
        vp = 0.5 * (best.a + best.md_x)
    return _dodge_values(d, vp)


def find_vp(d: Dataset, alpha: float, step: float = 0.0) -> float:
    """Valley point of a multimodal sample.

    Picks the candidate interval with the highest multimodality degree,
    zooming in recursively while the chosen interval is itself multimodal.
    """
    out = uu_test(d, alpha, step)
    if out.unimodal:
        raise ValueError("no valley exists")
    return _vp_from_candidates(d, out.candidates, alpha, step, 0)


def _split_recursive(d: Dataset, alpha: float, step: float, leaves: list, vps: list) -> None:
    if d.total < SPLIT_FLOOR or d.nvalues < 2:
        leaves.append(d)
        return
    out = uu_test(d, alpha, step)
    if out.unimodal:
        leaves.append(d)
        return
    vp = _vp_from_candidates(d, out.candidates, alpha, step, 0)
    left, right = d.split_at(vp)
    _split_recursive(left, alpha, step, leaves, vps)
    vps.append(vp)
    _split_recursive(right, alpha, step, leaves, vps)


def _merge_chain(subsets: list[Dataset], vps: list[float], alpha: float,
                 step: float) -> tuple[list[Dataset], list[float]]:
    subs = list(subsets)
    points = list(vps)
    restart = True
    while restart:
        restart = False
        for i in range(len(subs) - 1):
            union = merge_datasets(subs[i], subs[i + 1])
            if uu_test(union, alpha, step).unimodal:
                subs[i:i + 2] = [union]
                del points[i]
                restart = True
                break
    return subs, points


def merge_pass(subsets, alpha: float, step: float = 0.0) -> list[Dataset]:
    """Merge adjacent subsets while any union is unimodal (sweep restarts
    from the left after each merge), yielding a minimal unimodal partition."""
    subs = list(subsets)
    merged, _ = _merge_chain(subs, [0.0] * max(len(subs) - 1, 0), alpha, step)
    return merged


def unisplit(d: Dataset, alpha: float = 0.01, step: float = 0.0) -> SplitResult:
    """Partition a sample into unimodal subsets separated by valley points.

    `step` declares the quantization cell width of tied data, so that rounded
    values (pixel intensities) are judged by their histogram shape rather
    than their grid structure.
    """
    leaves: list[Dataset] = []
    vps: list[float] = []
    _split_recursive(d, alpha, step, leaves, vps)
    subs, points = _merge_chain(leaves, vps, alpha, step)
    labels = np.searchsorted(np.asarray(points), d.values, side="left")
    return SplitResult(tuple(points), tuple(subs), labels)
