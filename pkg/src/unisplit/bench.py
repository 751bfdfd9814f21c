"""Benchmark harness: seeded replicate runs of model fitting and splitting.

Replicate r of a suite uses seed (base_seed + r); rows are aggregated per
distribution, so result tables are reproducible and order-independent. The
UNISPLIT_THREADS environment variable caps worker threads.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dataset import make_dataset
from .splitting import unisplit
from .stats import ks_two_sample, nmi
from .synth import builtin, sample_mixture
from .udmm import fit_udmm

__all__ = ["BenchRow", "BenchReport", "run_bench", "TABLE3_DISTS", "TABLE5_DISTS"]

TABLE3_DISTS = [f"D{i}" for i in range(1, 13)]
TABLE5_DISTS = [f"D{i}" for i in range(13, 23)]


@dataclass(frozen=True)
class BenchRow:
    name: str
    replicate: int
    ks: float | None
    k: int
    nmi: float | None
    seed: int


@dataclass(frozen=True)
class BenchReport:
    suite: str
    rows: tuple[BenchRow, ...]
    wall_time: float

    def names(self) -> list[str]:
        seen: list[str] = []
        for row in self.rows:
            if row.name not in seen:
                seen.append(row.name)
        return seen

    def aggregate(self, name: str) -> dict:
        rows = [r for r in self.rows if r.name == name]
        out = {"name": name, "replicates": len(rows)}
        ks = [r.ks for r in rows if r.ks is not None]
        nm = [r.nmi for r in rows if r.nmi is not None]
        out["ks_mean"] = float(np.mean(ks)) if ks else None
        out["ks_std"] = float(np.std(ks)) if ks else None
        out["k_mean"] = float(np.mean([r.k for r in rows]))
        out["k_std"] = float(np.std([r.k for r in rows]))
        out["nmi_mean"] = float(np.mean(nm)) if nm else None
        out["nmi_std"] = float(np.std(nm)) if nm else None
        return out

    def text_table(self) -> str:
        header = f"{'name':<6}{'reps':>5}{'ks_mean':>10}{'ks_std':>9}{'k_mean':>8}{'k_std':>7}{'nmi_mean':>10}{'nmi_std':>9}"
        lines = [header]
        for name in self.names():
            a = self.aggregate(name)
            fmt = lambda v, w: f"{v:>{w}.4f}" if v is not None else " " * (w - 1) + "-"
            lines.append(f"{a['name']:<6}{a['replicates']:>5}" + fmt(a["ks_mean"], 10) + fmt(a["ks_std"], 9)
                         + f"{a['k_mean']:>8.2f}{a['k_std']:>7.2f}" + fmt(a["nmi_mean"], 10) + fmt(a["nmi_std"], 9))
        lines.append(f"wall time: {self.wall_time:.1f}s")
        return "\n".join(lines)

    def csv_lines(self) -> list[str]:
        lines = ["name,replicate,ks,k,nmi,seed"]
        for r in self.rows:
            ks = "" if r.ks is None else repr(r.ks)
            nm = "" if r.nmi is None else repr(r.nmi)
            lines.append(f"{r.name},{r.replicate},{ks},{r.k},{nm},{r.seed}")
        return lines


def _table3_replicate(name: str, rep: int, m: int, alpha: float, seed: int) -> BenchRow:
    specs = builtin(name, m)
    raw, _ = sample_mixture(specs, seed=seed)
    model = fit_udmm(make_dataset(raw), alpha)
    fresh, _ = sample_mixture(specs, seed=seed + 1_000_003)
    draw = model.sample(len(raw), seed=seed + 2_000_003)
    ks = ks_two_sample(make_dataset(fresh), make_dataset(draw))
    return BenchRow(name, rep, float(ks), model.k, None, seed)


def _table5_replicate(name: str, rep: int, m: int, alpha: float, seed: int) -> BenchRow:
    specs = builtin(name, m)
    raw, truth = sample_mixture(specs, seed=seed)
    result = unisplit(make_dataset(raw), alpha)
    score = nmi(truth, result.labels_for(raw))
    return BenchRow(name, rep, None, result.k, float(score), seed)


def threads_from_env() -> int:
    raw = os.environ.get("UNISPLIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_bench(suite: str, replicates: int = 20, m: int = 100, alpha: float = 0.01,
              seed: int = 0, dists=None, threads: int | None = None) -> BenchReport:
    if suite == "table3":
        names = list(dists) if dists else TABLE3_DISTS
        worker = _table3_replicate
    elif suite == "table5":
        names = list(dists) if dists else TABLE5_DISTS
        worker = _table5_replicate
    else:
        raise ValueError("suite must be 'table3' or 'table5'")
    jobs = [(name, rep, m, alpha, seed + rep) for name in names for rep in range(replicates)]
    start = time.perf_counter()
    nthreads = threads_from_env() if threads is None else max(1, threads)
    if nthreads == 1:
        rows = [worker(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            rows = list(pool.map(lambda j: worker(*j), jobs))
    rows.sort(key=lambda r: (names.index(r.name), r.replicate))
    return BenchReport(suite, tuple(rows), time.perf_counter() - start)
