"""Forbidden-subgraph screening with the largest signless p-Laplacian eigenvalue.

If G' is a subgraph of G then lambda_p(G') <= lambda_p(G) for every p > 1, so a
single p with lambda_p(G') > lambda_p(G) proves that G' does not embed in G.
All graphs here are treated as plain graphs: w = 1, mu = 1, kappa = 0 and
sigma = -1 are imposed before solving.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EmptyGraph
from .graph import SignedGraph, components, induced
from .power import SolverConfig, solve_max

TOL_STRICT = 1e-9
# tighter than the solver default so that two solves are comparable at TOL_STRICT
CRITERION_EPS = 1e-13
DEFAULT_GRID = "1.05:5:0.05"


def as_plain(g: SignedGraph) -> SignedGraph:
    return SignedGraph.from_arrays(
        g.n, g.src, g.dst, np.ones(g.m), -np.ones(g.m), one_based=False,
    )


def lambda_max_signless(g: SignedGraph, p, eps: float = CRITERION_EPS) -> float:
    """Largest eigenvalue of the signless p-Laplacian, maximised over components."""
    if g.n == 0:
        raise EmptyGraph("graph has no vertices")
    g = as_plain(g)
    best = 0.0  # isolated vertices contribute kappa/mu = 0
    for comp in components(g):
        if len(comp) < 2:
            continue
        sub = g if len(comp) == g.n else induced(g, comp)
        pair, _ = solve_max(sub, p, SolverConfig(eps=eps))
        best = max(best, pair.lam)
    return best


def star_lambda(d: int, p) -> float:
    """Closed form (1 + d^(1/(p-1)))^(p-1) for the star K_{1,d}."""
    p = float(p)
    return (1.0 + d ** (1.0 / (p - 1.0))) ** (p - 1.0)


def dense_power_max(M: np.ndarray, tol: float = 1e-15, max_iter: int = 1_000_000) -> float:
    """Largest eigenvalue of a symmetric positive semidefinite matrix by power iteration."""
    n = M.shape[0]
    if n == 0:
        return 0.0
    v = np.ones(n) / np.sqrt(n) + 1e-3 * np.cos(np.arange(n))  # avoid exact orthogonality
    v /= np.linalg.norm(v)
    theta = 0.0
    for _ in range(max_iter):
        u = M @ v
        theta_new = float(v @ u)
        nu = np.linalg.norm(u)
        if nu == 0:
            return 0.0
        v = u / nu
        if abs(theta_new - theta) <= tol * max(1.0, abs(theta_new)):
            res = np.linalg.norm(M @ v - theta_new * v)
            if res <= 1e-9 * max(1.0, abs(theta_new)):
                return theta_new
        theta = theta_new
    return theta


def _dense_adjacency(g):
    A = np.zeros((g.n, g.n))
    A[g.src, g.dst] = 1.0
    A[g.dst, g.src] = 1.0
    return A


def linear_baselines(g: SignedGraph):
    """Largest eigenvalues of A, L = D - A and Q = D + A (unit weights)."""
    if g.n == 0:
        raise EmptyGraph("graph has no vertices")
    A = _dense_adjacency(g)
    D = np.diag(A.sum(axis=1))
    dmax = float(A.sum(axis=1).max())
    # spectrum of A lies in [-dmax, dmax]; shift to make it PSD
    lam_a = dense_power_max(A + dmax * np.eye(g.n)) - dmax
    lam_l = dense_power_max(D - A)
    lam_q = dense_power_max(D + A)
    return lam_a, lam_l, lam_q


@dataclass
class CriterionReport:
    p_grid: list
    lambda_g: list
    lambda_gp: list
    witnesses: list = field(default_factory=list)
    baselines: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "NotSubgraph" if self.witnesses else "Inconclusive"

    def csv_lines(self) -> list:
        rows = ["p,lambda_G,lambda_Gprime,witness"]
        for p, a, b in zip(self.p_grid, self.lambda_g, self.lambda_gp):
            rows.append(f"{fmt(p)},{fmt(a)},{fmt(b)},{int(p in self.witnesses)}")
        for name, (vg, vgp) in self.baselines.items():
            rows.append(f"# baseline {name} G={fmt(vg)} Gprime={fmt(vgp)}")
        rows.append(f"# verdict {self.verdict}")
        return rows


def fmt(x) -> str:
    return format(float(x), ".17g")


def criterion_sweep(g: SignedGraph, gp: SignedGraph, p_grid: Sequence[float],
                    tol_strict: float = TOL_STRICT) -> CriterionReport:
    if g.n == 0 or gp.n == 0:
        raise EmptyGraph("both graphs need vertices")
    grid = sorted(float(p) for p in p_grid)
    lg = [lambda_max_signless(g, p) for p in grid]
    lgp = [lambda_max_signless(gp, p) for p in grid]
    wit = [p for p, a, b in zip(grid, lg, lgp) if b > a + tol_strict]
    bg, bgp = linear_baselines(g), linear_baselines(gp)
    base = {name: (bg[k], bgp[k]) for k, name in enumerate(("adjacency", "laplacian", "signless_laplacian"))}
    return CriterionReport(grid, lg, lgp, wit, base)


def scaled_curve(g: SignedGraph, p_grid: Sequence[float]) -> list:
    """``(p, lambda_p / 2^p)`` pairs; emitted as data only."""
    return [(float(p), lambda_max_signless(g, p) / 2.0 ** float(p)) for p in p_grid]


def parse_grid(text: str) -> list:
    """``"a:b:h"`` -> a, a+h, ... up to b (inclusive when h divides b-a)."""
    try:
        a, b, h = (float(x) for x in text.split(":"))
    except ValueError:
        raise ValueError(f"grid must look like start:stop:step, got {text!r}") from None
    if h <= 0 or b < a:
        raise ValueError(f"bad grid {text!r}")
    count = int(np.floor((b - a) / h + 1e-9)) + 1
    return [round(a + k * h, 12) for k in range(count)]
