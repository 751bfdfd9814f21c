"""Uniformity testing, two-sample ecdf distance, and clustering agreement."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset

__all__ = ["KsResult", "ks_uniformity", "ks_statistic_uniform", "ks_two_sample", "kolmogorov_sf", "nmi"]


@dataclass(frozen=True)
class KsResult:
    statistic: float
    p_value: float
    n_effective: int


def kolmogorov_sf(lam: float) -> float:
    """Asymptotic Kolmogorov survival function Q(lam) = 2 sum (-1)^{k-1} e^{-2 k^2 lam^2}."""
    if lam <= 0.0:
        return 1.0
    total = 0.0
    sign = 1.0
    for k in range(1, 100001):
        term = math.exp(-2.0 * k * k * lam * lam)
        if term < 1e-10:
            break
        total += sign * term
        sign = -sign
    return min(1.0, max(0.0, 2.0 * total))


def _uniform_deviation(values: np.ndarray, weights: np.ndarray, a: float, b: float) -> tuple[float, int]:
    n = int(weights.sum())
    u = (values - a) / (b - a)
    cum = np.cumsum(weights) / n
    prev = np.concatenate([[0.0], cum[:-1]])
    d = float(np.maximum(cum - u, u - prev).max())
    return max(d, 0.0), n


def ks_statistic_uniform(d: Dataset, a: float, b: float) -> tuple[float, int]:
    """Exact sup distance between the weighted ecdf of X(a,b) and the uniform cdf on [a,b]."""
    if a >= b:
        raise ValueError("degenerate interval")
    i0 = int(np.searchsorted(d.values, a, side="left"))
    i1 = int(np.searchsorted(d.values, b, side="right"))
    if i1 <= i0:
        raise ValueError("empty interval")
    return _uniform_deviation(d.values[i0:i1], d.weights[i0:i1], a, b)


def ks_uniformity(d: Dataset, a: float, b: float, alpha: float) -> tuple[bool, KsResult]:
    """Kolmogorov-Smirnov test of X(a,b) against uniformity on [a,b].

    Uses the finite-sample correction lam = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * D
    with the asymptotic survival function. Samples of effective size <= 2
    always accept: the test has no power there and rejecting would trigger
    spurious splits at distribution tails.
    """
    stat, n = ks_statistic_uniform(d, a, b)
    sqrt_n = math.sqrt(n)
    lam = (sqrt_n + 0.12 + 0.11 / sqrt_n) * stat
    p = kolmogorov_sf(lam)
    accept = n <= 2 or p > alpha
    return accept, KsResult(stat, p, n)


def ks_two_sample(a: Dataset, b: Dataset) -> float:
    """Exact sup-norm distance between two weighted ecdfs."""
    pooled = np.union1d(a.values, b.values)
    fa = np.cumsum(a.weights) / a.total
    fb = np.cumsum(b.weights) / b.total
    ia = np.searchsorted(a.values, pooled, side="right")
    ib = np.searchsorted(b.values, pooled, side="right")
    ya = np.where(ia > 0, fa[np.maximum(ia, 1) - 1], 0.0)
    yb = np.where(ib > 0, fb[np.maximum(ib, 1) - 1], 0.0)
    return float(np.abs(ya - yb).max())


def nmi(labels_a, labels_b) -> float:
    """Normalized mutual information with arithmetic-mean normalizer, natural logs."""
    la = np.asarray(labels_a).ravel()
    lb = np.asarray(labels_b).ravel()
    if la.size != lb.size or la.size == 0:
        raise ValueError("label sequences must have equal positive length")
    _, ia = np.unique(la, return_inverse=True)
    _, ib = np.unique(lb, return_inverse=True)
    ka = int(ia.max()) + 1
    kb = int(ib.max()) + 1
    if ka == 1 and kb == 1:
        return 1.0
    n = la.size
    cont = np.zeros((ka, kb), dtype=np.float64)
    np.add.at(cont, (ia, ib), 1.0)
    if ka == kb and np.count_nonzero(cont) == ka:
        return 1.0  # identical up to relabeling
    pij = cont / n
    pa = pij.sum(axis=1)
    pb = pij.sum(axis=0)
    nz = pij > 0
    outer = np.outer(pa, pb)
    mi = float((pij[nz] * np.log(pij[nz] / outer[nz])).sum())
    ha = -float((pa[pa > 0] * np.log(pa[pa > 0])).sum())
    hb = -float((pb[pb > 0] * np.log(pb[pb > 0])).sum())
    denom = 0.5 * (ha + hb)
    if denom <= 0.0:
        return 0.0
    return min(1.0, max(0.0, mi / denom))
