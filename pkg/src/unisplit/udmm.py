"""Hierarchical mixture of uniform-mixture components, one per unimodal subset."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .splitting import unisplit
from .uutest import UMM, uu_test

__all__ = ["UDMM", "ModelFormatError", "fit_udmm", "load_model", "save_model"]

DENSITY_FLOOR = 1e-300


class ModelFormatError(ValueError):
    """Raised on malformed model files; the message names the offending field."""


@dataclass(frozen=True)
class UDMM:
    components: tuple[UMM, ...]
    weights: np.ndarray
    valley_points: tuple[float, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        object.__setattr__(self, "weights", w)
        if len(self.components) == 0 or len(self.components) != w.size:
            raise ValueError("one weight per component required")
        if len(self.valley_points) != len(self.components) - 1:
            raise ValueError("need exactly K-1 valley points")
        if np.any(w <= 0) or abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must be positive and sum to 1")

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def support(self) -> tuple[float, float]:
        return float(self.components[0].breakpoints[0]), float(self.components[-1].breakpoints[-1])

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.zeros_like(x)
        for w, comp in zip(self.weights, self.components):
            out = out + w * comp.pdf(x)
        return float(out[0]) if scalar else out

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.zeros_like(x)
        for w, comp in zip(self.weights, self.components):
            out = out + w * comp.cdf(x)
        return float(out[0]) if scalar else out

    def sample(self, count: int, seed=None, rng: np.random.Generator | None = None) -> np.ndarray:
        """Draw `count` points; deterministic for a fixed seed (PCG64 stream)."""
        if count < 1:
            raise ValueError("count must be positive")
        if rng is None:
            rng = np.random.default_rng(seed)
        which = rng.choice(self.k, size=count, p=self.weights)
        out = np.empty(count, dtype=np.float64)
        for j, comp in enumerate(self.components):
            mask = which == j
            m = int(mask.sum())
            if m:
                out[mask] = comp.sample(rng, m)
        return out

    def log_likelihood(self, values) -> float:
        dens = np.maximum(self.pdf(np.asarray(values, dtype=np.float64)), DENSITY_FLOOR)
        return float(np.log(dens).sum())

    def to_dict(self) -> dict:
        return {
            "weights": [float(w) for w in self.weights],
            "valley_points": [float(v) for v in self.valley_points],
            "components": [
                {
                    "breakpoints": [float(b) for b in c.breakpoints],
                    "weights": [float(w) for w in c.weights],
                }
                for c in self.components
            ],
        }


def fit_udmm(d: Dataset, alpha: float = 0.01, step: float = 0.0) -> UDMM:
    """Split into unimodal subsets and model each with a UMM."""
    result = unisplit(d, alpha, step)
    comps = []
    for sub in result.subsets:
        outcome = uu_test(sub, alpha, step)
        if not outcome.unimodal:
            raise RuntimeError("unstable partition")
        comps.append(outcome.model)
    weights = np.array([sub.total for sub in result.subsets], dtype=np.float64) / d.total
    return UDMM(tuple(comps), weights, result.valley_points)


def _require(cond: bool, field: str):
    if not cond:
        raise ModelFormatError(field)


def _float_list(obj, field: str) -> list[float]:
    _require(isinstance(obj, list) and len(obj) > 0, field)
    out = []
    for v in obj:
        _require(isinstance(v, (int, float)) and not isinstance(v, bool), field)
        out.append(float(v))
    return out


def udmm_from_dict(doc: dict) -> UDMM:
    _require(isinstance(doc, dict), "document")
    for key in ("weights", "valley_points", "components"):
        _require(key in doc, key)
    weights = _float_list(doc["weights"], "weights")
    _require(all(w > 0 for w in weights), "weights")
    _require(abs(sum(weights) - 1.0) <= 1e-12, "weights")
    vps = doc["valley_points"]
    _require(isinstance(vps, list), "valley_points")
    vps = [float(v) for v in vps]
    _require(len(vps) == len(weights) - 1, "valley_points")
    _require(all(vps[i] < vps[i + 1] for i in range(len(vps) - 1)), "valley_points")
    raw_comps = doc["components"]
    _require(isinstance(raw_comps, list) and len(raw_comps) == len(weights), "components")
    comps = []
    for idx, rc in enumerate(raw_comps):
        where = f"components[{idx}]"
        _require(isinstance(rc, dict) and "breakpoints" in rc and "weights" in rc, where)
        bp = _float_list(rc["breakpoints"], f"{where}.breakpoints")
        cw = _float_list(rc["weights"], f"{where}.weights")
        _require(len(bp) == len(cw) + 1, f"{where}.breakpoints")
        atom = len(cw) == 1 and bp[0] == bp[1]
        if not atom:
            _require(all(bp[i] < bp[i + 1] for i in range(len(bp) - 1)), f"{where}.breakpoints")
        _require(all(w >= 0 for w in cw), f"{where}.weights")
        _require(abs(sum(cw) - 1.0) <= 1e-12, f"{where}.weights")
        comps.append(UMM(np.array(bp), np.array(cw)))
    for j in range(len(comps) - 1):
        _require(comps[j].breakpoints[-1] <= comps[j + 1].breakpoints[0] + 1e-12, "components")
    return UDMM(tuple(comps), np.array(weights), tuple(vps))


def save_model(model: UDMM, path) -> None:
    text = json.dumps(model.to_dict(), indent=2)
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text + "\n")
    os.replace(tmp, path)


def load_model(path) -> UDMM:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"invalid JSON: {exc}") from exc
    return udmm_from_dict(doc)
