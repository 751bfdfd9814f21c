"""Seeded generators for the benchmark distributions.

Sampling uses numpy's PCG64 generator, so a (seed, spec list) pair pins the
exact stream. D1-D12 sizes scale with the multiplier m (default 100);
D13-D22 sizes are absolute counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DistSpec", "sample_spec", "sample_mixture", "builtin", "builtin_names"]


_FAMILIES = {
    "normal": ("mu", "sigma"),
    "uniform": ("a", "b"),
    "triangular": ("left", "mode", "right"),
    "student_t": ("df", "loc", "scale"),
    "cauchy": ("loc", "scale"),
    "gamma": ("shape", "scale", "loc"),
    "half_normal_right": ("mu", "sigma"),
    "half_normal_left": ("mu", "sigma"),
}


@dataclass(frozen=True)
class DistSpec:
    kind: str
    params: tuple[float, ...]
    n: int

    def __post_init__(self):
        if self.kind not in _FAMILIES:
            raise ValueError(f"unknown distribution kind: {self.kind}")
        if len(self.params) != len(_FAMILIES[self.kind]):
            raise ValueError(f"{self.kind} takes {_FAMILIES[self.kind]}")
        if self.n < 1:
            raise ValueError("sample count must be positive")
        p = dict(zip(_FAMILIES[self.kind], self.params))
        ok = {
            "normal": lambda: p["sigma"] > 0,
            "uniform": lambda: p["a"] < p["b"],
            "triangular": lambda: p["left"] <= p["mode"] <= p["right"] and p["left"] < p["right"],
            "student_t": lambda: p["df"] > 0 and p["scale"] > 0,
            "cauchy": lambda: p["scale"] > 0,
            "gamma": lambda: p["shape"] > 0 and p["scale"] > 0,
            "half_normal_right": lambda: p["sigma"] > 0,
            "half_normal_left": lambda: p["sigma"] > 0,
        }[self.kind]
        if not ok():
            raise ValueError(f"invalid parameters for {self.kind}: {self.params}")


def _half_normal(rng: np.random.Generator, mu: float, sigma: float, n: int, right: bool) -> np.ndarray:
    # rejection keeps the exact conditional of N(mu, sigma) on one side of mu
    out = np.empty(0)
    while out.size < n:
        draw = rng.normal(mu, sigma, size=2 * (n - out.size) + 8)
        keep = draw[draw >= mu] if right else draw[draw <= mu]
        out = np.concatenate([out, keep])
    return out[:n]


def sample_spec(spec: DistSpec, seed=None, rng: np.random.Generator | None = None) -> np.ndarray:
    if rng is None:
        rng = np.random.default_rng(seed)
    p = spec.params
    n = spec.n
    if spec.kind == "normal":
        return rng.normal(p[0], p[1], size=n)
    if spec.kind == "uniform":
        return rng.uniform(p[0], p[1], size=n)
    if spec.kind == "triangular":
        return rng.triangular(p[0], p[1], p[2], size=n)
    if spec.kind == "student_t":
        return rng.standard_t(p[0], size=n) * p[2] + p[1]
    if spec.kind == "cauchy":
        return rng.standard_cauchy(size=n) * p[1] + p[0]
    if spec.kind == "gamma":
        return rng.gamma(p[0], p[1], size=n) + p[2]
    if spec.kind == "half_normal_right":
        return _half_normal(rng, p[0], p[1], n, right=True)
    return _half_normal(rng, p[0], p[1], n, right=False)


def sample_mixture(specs, seed=None) -> tuple[np.ndarray, np.ndarray]:
    """Concatenated component samples plus ground-truth component labels."""
    rng = np.random.default_rng(seed)
    parts = []
    labels = []
    for idx, spec in enumerate(specs):
        parts.append(sample_spec(spec, rng=rng))
        labels.append(np.full(spec.n, idx, dtype=np.int64))
    return np.concatenate(parts), np.concatenate(labels)


def _n(mult: float, m: int) -> int:
    return int(round(mult * m))


def builtin(name: str, m: int = 100) -> list[DistSpec]:
    """Benchmark distribution by name (D1-D22)."""
    N, U, T = "normal", "uniform", "triangular"
    S, C, G = "student_t", "cauchy", "gamma"
    tables = {
        "D1": [(N, (0, 1), 5), (N, (6, 1), 8)],
        "D2": [(N, (-1, 0.8), 20), (N, (4, 1.5), 25)],
        "D3": [(S, (2, 0, 1), 5), (U, (4, 7), 2), (N, (10, 1), 4)],
        "D4": [(T, (-5, -4, 0), 3), (T, (1, 5, 6), 5), (U, (7, 10), 2)],
        "D5": [(G, (1, 2, 0), 5), (T, (5, 6, 7), 5), (N, (10, 0.2), 5), (S, (10, 15, 1), 8)],
        "D6": [(C, (0, 2), 1), (U, (50, 55), 3), (U, (100, 105), 3), (S, (1, 200, 1), 1)],
        "D7": [(U, (-1, 1), 10), (U, (2, 7), 12)],
        "D8": [(S, (1, -10, 1), 2), (S, (2, 0, 1), 3), (S, (1, 5, 1), 3.5), (S, (3, 15, 1), 2.5), (S, (5, 20, 1), 4)],
        "D9": [(U, (-20, -15), 10), (U, (-10, 0), 25), (U, (1, 10), 30), (U, (12, 14), 20), (U, (20, 50), 15), (U, (55, 60), 5)],
        "D10": [(U, (-15, -7), 50), (N, (-2, 4), 40), (N, (9, 3), 30), (U, (15, 20), 20)],
        "D11": [(S, (5, -2, 1), 2), (N, (5, 0.5), 2), (U, (7, 10), 2), (G, (2, 3, 12), 2), (U, (25, 30), 2), (T, (40, 45, 50), 2), (T, (55, 56, 60), 2)],
        "D12": [(S, (1, -50, 1), 1), (C, (0, 2), 1), (U, (30, 60), 1)],
    }
    absolute = {
        "D13": [(N, (0, 1.7), 700), (N, (5, 1), 500)],
        "D14": [(U, (-1, 3), 300), (U, (8, 10), 200)],
        "D15": [(T, (0.8, 1, 5), 1000), (T, (3, 7.8, 8), 1000)],
        "D16": [("half_normal_right", (0, 1), 1000), ("half_normal_left", (4, 1), 1000)],
        "D17": [(T, (-3.3, 1, 2.5), 1000), (N, (4, 1), 1000)],
        "D18": [(U, (-2, 0), 200), (U, (1, 5), 300), (U, (6, 7), 450)],
        "D19": [(N, (0, 1), 500), (N, (6, 1), 80), (N, (12, 1), 500), (N, (18, 1), 100)],
        "D20": [(N, (0, 1), 500), (N, (4, 1), 300), (N, (11, 1), 500), (U, (14, 15), 50)],
        "D21": [(N, (0, 1), 500), (N, (4, 1), 300), (U, (10, 11), 100), (U, (14, 15), 50)],
        "D22": [(N, (0, 1), 500), (U, (2.5, 4), 200), (U, (10, 11), 100), (U, (14, 15), 50)],
    }
    if name in tables:
        return [DistSpec(kind, tuple(float(v) for v in params), _n(mult, m))
                for kind, params, mult in tables[name]]
    if name in absolute:
        return [DistSpec(kind, tuple(float(v) for v in params), int(count))
                for kind, params, count in absolute[name]]
    raise ValueError(f"unknown distribution name: {name}")


def builtin_names() -> list[str]:
    return [f"D{i}" for i in range(1, 23)]
