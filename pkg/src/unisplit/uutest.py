"""Unimodality decision with a constructive uniform-mixture model.

The decision asks whether some knot subset of the ecdf's critical points
yields a piecewise-linear cdf that is unimodal (chord slopes rise, then fall)
and sufficient (data between consecutive knots passes a uniformity test).
Knots are searched by adaptive refinement: start from the two extremes and
insert critical points only inside intervals that fail uniformity. Local
noise is absorbed by coarse intervals, while a genuine density valley fails
at every scale and cannot be refined without breaking the slope order.

Candidate splitting intervals come from the non-uniform stretches between
successive same-kind critical points, with the stretch between the last gcm
and first lcm point recursively augmented by its own hull points.
"""

from __future__ import annotations

import bisect
import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .hull import hull_indices
from .stats import kolmogorov_sf

__all__ = ["UMM", "Candidate", "UUOutcome", "uu_test"]

SPLIT_FLOOR = 4        # samples below this size are modeled, never questioned
_MAX_MIDDLE_DEPTH = 50  # refinement guard for floating-point plateaus


@dataclass(frozen=True)
class UMM:
    """Mixture of uniform components over consecutive breakpoint intervals.

    A single zero-width component is allowed and represents a point mass
    (arises from quantized data where a subset holds one distinct value).
    """

    breakpoints: np.ndarray  # M+1 floats
    weights: np.ndarray      # M floats, sum 1

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "weights", w)
        if bp.ndim != 1 or w.ndim != 1 or bp.size != w.size + 1 or w.size == 0:
            raise ValueError("breakpoints must be one longer than weights")
        if self.is_atom:
            return
        if np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")

    @property
    def ncomponents(self) -> int:
        return int(self.weights.size)

    @property
    def is_atom(self) -> bool:
        return self.weights.size == 1 and self.breakpoints[0] == self.breakpoints[1]

    @property
    def densities(self) -> np.ndarray:
        if self.is_atom:
            return np.array([math.inf])
        return self.weights / np.diff(self.breakpoints)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        if self.is_atom:
            out = np.where(x == self.breakpoints[0], math.inf, 0.0)
        else:
            idx = np.searchsorted(self.breakpoints, x, side="right") - 1
            inside = (idx >= 0) & (x < self.breakpoints[-1])
            dens = self.densities
            out = np.where(inside, dens[np.clip(idx, 0, dens.size - 1)], 0.0)
        return float(out[0]) if scalar else out

    def cdf(self, x):
        if self.is_atom:
            x = np.asarray(x, dtype=np.float64)
            out = np.where(x >= self.breakpoints[0], 1.0, 0.0)
            return float(out) if out.ndim == 0 else out
        cum = np.concatenate([[0.0], np.cumsum(self.weights)])
        cum[-1] = 1.0
        out = np.interp(x, self.breakpoints, cum, left=0.0, right=1.0)
        return float(out) if np.isscalar(x) else out

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        comp = rng.choice(self.ncomponents, size=count, p=self.weights / self.weights.sum())
        lo = self.breakpoints[comp]
        hi = self.breakpoints[comp + 1]
        return lo + rng.random(count) * (hi - lo)


@dataclass(frozen=True)
class Candidate:
    """Non-uniform interval between successive same-kind critical points."""

    a: float
    b: float
    kind: str          # "gcm" or "lcm"
    deviation: float   # multimodality degree, used to rank candidates
    md_x: float | None  # deviation argmax strictly inside (a, b); None if no interior value


@dataclass(frozen=True)
class UUOutcome:
    unimodal: bool
    model: UMM | None
    candidates: tuple[Candidate, ...] | None


def _pair_accepts(d: Dataset, cumw: np.ndarray, ja: int, jb: int, alpha: float,
                  step: float, cache: dict) -> bool:
    """Cached uniformity decision for the value-index window [ja, jb].

    With step > 0 each tied value is treated as mass spread over a
    quantization cell of that width, so that the grid structure of rounded
    data (for example 8-bit pixel intensities) is not itself read as
    non-uniformity. step = 0 is the plain point-mass statistic.
    """
    hit = cache.get((ja, jb))
    if hit is not None:
        return hit
    base = cumw[ja - 1] if ja > 0 else 0
    n = int(cumw[jb] - base)
    if n <= 2:
        cache[(ja, jb)] = True
        return True
    a = d.values[ja]
    b = d.values[jb]
    values = d.values[ja:jb + 1]
    cum = (cumw[ja:jb + 1] - base) / n
    prev = np.concatenate([[0.0], cum[:-1]])
    width = b - a + step
    u_hi = (values - a + step) / width
    u_lo = (values - a) / width
    stat = float(np.maximum(np.abs(cum - u_hi), np.abs(prev - u_lo)).max())
    sqrt_n = math.sqrt(n)
    lam = (sqrt_n + 0.12 + 0.11 / sqrt_n) * stat
    accept = kolmogorov_sf(lam) > alpha
    cache[(ja, jb)] = accept
    return accept


def interior_deviation(d: Dataset, cumw: np.ndarray, ja: int, jb: int) -> tuple[float | None, float]:
    """Deviation argmax of the window ecdf from uniformity over interior values.

    Returns (x, deviation); x is None when the window has no interior value,
    in which case the deviation is the largest pre-jump shortfall (how far the
    uniform cdf runs ahead of the data across a value gap).
    """
    base = cumw[ja - 1] if ja > 0 else 0
    n = int(cumw[jb] - base)
    a = d.values[ja]
    b = d.values[jb]
    u = (d.values[ja:jb + 1] - a) / (b - a)
    cum = (cumw[ja:jb + 1] - base) / n
    if jb - ja >= 2:
        dev = np.abs(cum[1:-1] - u[1:-1])
        j = int(np.argmax(dev))
        return float(d.values[ja + 1 + j]), float(dev[j])
    prev = np.concatenate([[0.0], cum[:-1]])
    return None, float(np.maximum(u - prev, 0.0).max())


def _make_candidate(d: Dataset, cumw: np.ndarray, ja: int, jb: int, kind: str) -> Candidate:
    md_x, dev = interior_deviation(d, cumw, ja, jb)
    return Candidate(float(d.values[ja]), float(d.values[jb]), kind, dev, md_x)


def _analyze(d: Dataset, cumw: np.ndarray, i0: int, i1: int, alpha: float, step: float,
             depth: int, tags: set, candidates: list, cache: dict) -> bool:
    """Collect hull points of the window and candidate splitting intervals.

    Returns True when the window resolves into a convex-then-concave chain
    of critical points whose middle stretch is uniform.
    """
    lower, upper = hull_indices(d, cumw, i0, i1)
    tags.update(lower)
    tags.update(upper)

    before = len(candidates)
    # The closing chord of each chain (into the window max for the gcm chain,
    # out of the window min for the lcm chain) spans a whole monotone flank of
    # the outermost mode, not a valley, and is left to the middle-stretch check.
    for ja, jb in zip(lower[:-2], lower[1:-1]):
        if not _pair_accepts(d, cumw, ja, jb, alpha, step, cache):
            candidates.append(_make_candidate(d, cumw, ja, jb, "gcm"))
    for ja, jb in zip(upper[1:-1], upper[2:]):
        if not _pair_accepts(d, cumw, ja, jb, alpha, step, cache):
            candidates.append(_make_candidate(d, cumw, ja, jb, "lcm"))
    found_here = len(candidates) > before

    maxg_i = lower[-2]
    minl_i = upper[1]
    if d.values[maxg_i] >= d.values[minl_i]:
        # gcm and lcm points interleave; same-kind pairs already cover the
        # window but the chains do not stack into one convex-concave run.
        return False
    if _pair_accepts(d, cumw, maxg_i, minl_i, alpha, step, cache):
        return not found_here
    # Non-uniform middle: expose its own hull structure and recurse.
    shrinks = (maxg_i, minl_i + 1) != (i0, i1)
    if minl_i - maxg_i >= 2 and depth < _MAX_MIDDLE_DEPTH and shrinks:
        deeper = _analyze(d, cumw, maxg_i, minl_i + 1, alpha, step, depth + 1, tags, candidates, cache)
        return deeper and not found_here
    # No interior hull points can explain the non-uniformity: the mass sits in
    # separated atoms, so the stretch itself is the splitting interval. Its
    # two-point sub-hull makes the endpoints same-kind in the augmented set.
    candidates.append(_make_candidate(d, cumw, maxg_i, minl_i, "gcm"))
    return False


def _slope_unimodal(x: np.ndarray, y: np.ndarray) -> bool:
    """True when chord slopes rise (weakly) to a peak and then fall."""
    s = np.diff(y) / np.diff(x)
    if s.size <= 1:
        return True
    rises = np.diff(s)
    tol = 1e-9 * (float(np.abs(s).max()) + 1.0)
    neg = np.nonzero(rises < -tol)[0]
    pos = np.nonzero(rises > tol)[0]
    first_drop = neg[0] if neg.size else rises.size
    last_rise = pos[-1] if pos.size else -1
    return last_rise < first_drop


def _try_inserts(d: Dataset, cumw: np.ndarray, knots: list[int], inside: list[int],
                 ja: int, jb: int) -> list[int] | None:
    """Insert one, or failing that two, points of `inside` into the chain while
    keeping the rise-then-fall slope order. Candidates are ranked by their
    distance from the chord over [ja, jb]."""
    if not inside:
        return None
    base = cumw[ja - 1] if ja > 0 else 0
    span = cumw[jb] - base
    chord = base + span * (d.values[inside] - d.values[ja]) / (d.values[jb] - d.values[ja])
    order = np.argsort(-np.abs(cumw[inside] - chord), kind="stable")
    for pick in order:
        trial = sorted(knots + [inside[int(pick)]])
        if _slope_unimodal(d.values[trial], cumw[trial].astype(np.float64)):
            return trial
    # A local density bulge needs two knots at once: the stretch between them
    # becomes the peak segment. A genuine valley (slopes falling then rising)
    # cannot be fixed by any insertion pair.
    top = [inside[int(p)] for p in order[:16]]
    for u in range(len(top)):
        for v in range(u + 1, len(top)):
            trial = sorted(knots + [top[u], top[v]])
            if _slope_unimodal(d.values[trial], cumw[trial].astype(np.float64)):
                return trial
    return None


def _refine_model(d: Dataset, cumw: np.ndarray, pool: list[int], alpha: float,
                  step: float, cache: dict) -> tuple[list[int] | None, tuple[int, int] | None]:
    """Search for a unimodal, sufficient knot chain by adaptive refinement.

    Starts from the extreme values; whenever an interval fails uniformity, a
    critical point inside it is inserted (most-deviating first), rejecting
    insertions that break the rise-then-fall slope order. When no insertion
    fits, the interval's own hull vertices are probed as fresh knot material,
    and as a last resort a flanking knot is removed so the neighbourhood can
    be carved differently. Returns (knots, None) on success or
    (None, sticking_interval) on failure.
    """
    last = d.nvalues - 1
    avail = sorted(i for i in pool if 0 < i < last)
    knots = [0, last]
    probed: set[tuple[int, int]] = set()
    removals: set[tuple[int, int, int]] = set()
    while True:
        bad = None
        for ja, jb in zip(knots[:-1], knots[1:]):
            if not _pair_accepts(d, cumw, ja, jb, alpha, step, cache):
                bad = (ja, jb)
                break
        if bad is None:
            return knots, None
        ja, jb = bad
        lo = bisect.bisect_right(avail, ja)
        hi = bisect.bisect_left(avail, jb)
        trial = _try_inserts(d, cumw, knots, avail[lo:hi], ja, jb)
        if trial is None and jb - ja >= 2 and bad not in probed:
            # pull the window's own hull vertices into the pool; they carve
            # monotone stretches the way the global critical points cannot
            probed.add(bad)
            low_chain, up_chain = hull_indices(d, cumw, ja, jb + 1)
            for i in sorted(set(low_chain[1:-1]) | set(up_chain[1:-1])):
                pos = bisect.bisect_left(avail, i)
                if pos == len(avail) or avail[pos] != i:
                    avail.insert(pos, i)
            lo = bisect.bisect_right(avail, ja)
            hi = bisect.bisect_left(avail, jb)
            trial = _try_inserts(d, cumw, knots, avail[lo:hi], ja, jb)
        if trial is not None:
            knots = trial
            continue
        repaired = False
        if len(removals) < 200:
            for r in (ja, jb):
                if r in (0, last) or (r, ja, jb) in removals:
                    continue
                removals.add((r, ja, jb))
                knots.remove(r)
                repaired = True
                break
        if not repaired:
            return None, bad


def _densify(d: Dataset, cumw: np.ndarray, knots: list[int], pool: set[int]) -> list[int]:
    """Grow an accepted knot chain with further critical points while the
    rise-then-fall slope order holds, so the cdf model tracks the ecdf at
    every usable vertex rather than only at the coarse accepted chain.

    Each accepted interval contributes its own hull vertices to the pool;
    in particular the stretch over the mode gets the knots that describe
    its rise and fall.
    """
    pool = set(pool)
    for ja, jb in zip(knots[:-1], knots[1:]):
        if jb - ja >= 2:
            low_chain, up_chain = hull_indices(d, cumw, ja, jb + 1)
            pool.update(low_chain[1:-1])
            pool.update(up_chain[1:-1])
    cand = sorted(pool - set(knots))
    y = cumw.astype(np.float64)
    if len(cand) > 512:
        dev = np.abs(y[cand] - np.interp(d.values[cand], d.values[knots], y[knots]))
        keep = np.argsort(-dev, kind="stable")[:512]
        cand = [cand[int(i)] for i in keep]
    for _ in range(6):
        if not cand:
            break
        kv = d.values[knots]
        ky = y[knots]
        dev = np.abs(y[cand] - np.interp(d.values[cand], kv, ky))
        order = np.argsort(-dev, kind="stable")
        rest: list[int] = []
        placed = 0
        for pick in order:
            i = cand[int(pick)]
            if dev[int(pick)] <= 0.0:
                continue
            trial = sorted(knots + [i])
            if _slope_unimodal(d.values[trial], y[trial]):
                knots = trial
                placed += 1
            else:
                rest.append(i)
        if not placed:
            break
        cand = rest
    return knots


def _umm_from_indices(d: Dataset, cumw: np.ndarray, S: list[int]) -> UMM:
    bp = d.values[S].astype(np.float64)
    below = np.array([cumw[j - 1] if j > 0 else 0 for j in S], dtype=np.float64)
    mass = np.diff(below)
    mass[-1] = cumw[S[-1]] - below[-2]  # last interval closed, takes the max value's weight
    return UMM(bp, mass / d.total)


def _trivial_model(d: Dataset) -> UMM:
    if d.nvalues == 1:
        x = float(d.values[0])
        return UMM(np.array([x, x]), np.array([1.0]))
    return UMM(np.array([d.xmin, d.xmax]), np.array([1.0]))


_memo: dict[bytes, UUOutcome] = {}
_MEMO_LIMIT = 64


def _digest(d: Dataset, alpha: float, step: float) -> bytes:
    h = hashlib.blake2b(digest_size=16)
    h.update(np.float64(alpha).tobytes())
    h.update(np.float64(step).tobytes())
    h.update(d.values.tobytes())
    h.update(np.ascontiguousarray(d.weights).tobytes())
    return h.digest()


def uu_test(d: Dataset, alpha: float, step: float = 0.0) -> UUOutcome:
    """Decide unimodality of a weighted sample.

    A unimodal outcome carries the fitted UMM; a multimodal outcome carries
    the candidate splitting intervals, each failing the uniformity test.
    `step` is the quantization cell width of tied data (0 for point masses).
    Outcomes are memoized on content: the splitting and merging passes
    revisit identical subsets several times.
    """
    if d.nvalues < 2 or d.total < SPLIT_FLOOR:
        return UUOutcome(True, _trivial_model(d), None)
    key = _digest(d, alpha, step)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    out = _uu_test_fresh(d, alpha, step)
    if len(_memo) >= _MEMO_LIMIT:
        _memo.pop(next(iter(_memo)))
    _memo[key] = out
    return out


def _uu_test_fresh(d: Dataset, alpha: float, step: float) -> UUOutcome:
    cumw = np.cumsum(d.weights)
    tags: set[int] = set()
    candidates: list[Candidate] = []
    cache: dict = {}
    resolved = _analyze(d, cumw, 0, d.nvalues, alpha, step, 0, tags, candidates, cache)
    if resolved and not candidates:
        knots = _densify(d, cumw, sorted(tags), tags)
        return UUOutcome(True, _umm_from_indices(d, cumw, knots), None)
    knots, sticking = _refine_model(d, cumw, sorted(tags), alpha, step, cache)
    if knots is not None:
        knots = _densify(d, cumw, knots, tags)
        return UUOutcome(True, _umm_from_indices(d, cumw, knots), None)
    if not candidates:
        # Rare corner: no same-kind pair rejected but no unimodal chain fits.
        # Offer the sticking interval of the refinement as the candidate.
        candidates.append(_make_candidate(d, cumw, sticking[0], sticking[1], "gcm"))
    candidates.sort(key=lambda c: (c.a, c.b))
    return UUOutcome(False, None, tuple(candidates))
