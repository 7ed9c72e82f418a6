"""Timing sweep of the power solver over random graphs with a growing edge count."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import gnm
from .power import SolverConfig, solve_max

HEADER = "n,m,p,iters,wall_time,lambda,seed"


@dataclass
class BenchRecord:
    n: int
    m: int
    p: float
    iters: int
    wall_time: float
    lam: float
    seed: int

    def csv(self) -> str:
        return (f"{self.n},{self.m},{self.p:.17g},{self.iters},{self.wall_time:.6f},"
                f"{self.lam:.17g},{self.seed}")


def edge_counts(lo: int, hi: int, steps: int) -> list:
    return [int(round(x)) for x in np.linspace(lo, hi, steps)]


def _one(n, m, p, seed, eps, repeats):
    g = gnm(n, m, seed)
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        pair, trace = solve_max(g, p, SolverConfig(eps=eps, record_trace=True))
        best = min(best, time.perf_counter() - t0)
    return BenchRecord(n, m, float(p), len(trace), best, pair.lam, seed)


def run_bench(n: int, ms, p: float, seed: int, eps: float = 1e-10, jobs: int = 1,
              repeats: int = 3) -> list:
    """One record per edge count.

    Only the solve is timed (not generation); ``wall_time`` is the fastest of
    ``repeats`` identical solves, which filters scheduler noise.
    """
    if jobs <= 1:
        return [_one(n, m, p, seed, eps, repeats) for m in ms]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(lambda m: _one(n, m, p, seed, eps, repeats), ms))


def linear_fit_r2(x, y) -> float:
    """Coefficient of determination of the least-squares line y ~ a + b x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    b, a = np.polyfit(x, y, 1)
    ss_res = np.sum((y - (a + b * x)) ** 2)
    ss_tot = np.sum((y - y.mean()) ** 2)
    return float(1.0 - ss_res / ss_tot) if ss_tot > 0 else 1.0
