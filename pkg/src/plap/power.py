"""Largest eigenpair of the signless p-Laplacian by nonlinear power iteration.

Each step maps f to (Delta_p f)^(1/(p-1)), renormalised.  The ratios
(Delta_p f)_i / f_i^(p-1) give a lower and an upper bracket on the largest
eigenvalue; the lower one never decreases, the upper one never increases, and
both converge to lambda_max on a connected graph from any positive start.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import operator as op
from .errors import BadInitial, BadParams, MaxIterExceeded, NotConnected, NotSignless, ZeroFunction
from .graph import SignedGraph, is_connected


@dataclass
class SolverConfig:
    eps: float = 1e-10
    max_iter: int = 100_000
    f0: Optional[np.ndarray] = None
    record_trace: bool = False
    # "mu2": mu-weighted 2-norm; "l2": plain 2-norm.  Brackets do not depend on it.
    norm: str = "mu2"

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise BadParams(f"eps must lie in (0, 1), got {self.eps}")
        if int(self.max_iter) < 1:
            raise BadParams(f"max_iter must be positive, got {self.max_iter}")
        if self.norm not in ("mu2", "l2"):
            raise BadParams(f"unknown norm {self.norm!r}")
        if self.f0 is not None:
            self.f0 = np.asarray(self.f0, dtype=float)
            if not np.all(self.f0 > 0):
                raise BadInitial("initial vector must be strictly positive")


@dataclass
class Eigenpair:
    lam: float
    f: np.ndarray
    residual: float


@dataclass
class IterationTrace:
    lower: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    shift: float = 0.0

    def append(self, lo, hi):
        self.lower.append(lo)
        self.upper.append(hi)

    @property
    def rel_gap(self) -> list:
        return [(u - l) / (u + l) for l, u in zip(self.lower, self.upper)]

    def __len__(self):
        return len(self.lower)

    def rows(self):
        """``(k, lower, upper, rel_gap)`` with k starting at 1."""
        return [(k + 1, l, u, g) for k, (l, u, g) in enumerate(zip(self.lower, self.upper, self.rel_gap))]


def verify_eigenpair(g: SignedGraph, p, lam: float, f) -> float:
    """max_i |(Delta_p f)_i - lam Phi_p(f_i)| / max(1, |lam|)."""
    f = np.asarray(f, dtype=float)
    if not np.any(f != 0):
        raise ZeroFunction("eigenfunction must be nonzero")
    r = op.apply(g, p, f) - lam * op.phi_p(f, p)
    return float(np.max(np.abs(r)) / max(1.0, abs(lam)))


def _normalize(g, f, norm):
    if norm == "mu2":
        return f / np.sqrt(np.sum(g.mu * f * f))
    return f / np.linalg.norm(f)


def solve_max(g: SignedGraph, p, cfg: Optional[SolverConfig] = None):
    """Largest eigenpair of the signless p-Laplacian of a connected graph.

    Returns ``(Eigenpair, IterationTrace | None)``.  Negative potentials are
    shifted away first and the shift is subtracted from the final value.
    """
    p = op.check_p(p)
    cfg = cfg or SolverConfig()
    if g.n < 2:
        raise BadParams("need at least 2 vertices")
    if not g.is_signless():
        raise NotSignless("every edge must have sigma = -1")
    if not is_connected(g):
        raise NotConnected("graph must be connected")
    if cfg.f0 is not None and cfg.f0.shape != (g.n,):
        raise BadInitial(f"initial vector has {cfg.f0.size} entries, graph has {g.n} vertices")

    g2, c = op.shift_potential(g)
    q = p - 1.0
    trace = IterationTrace(shift=c) if cfg.record_trace else None

    f = np.ones(g.n) if cfg.f0 is None else cfg.f0.copy()
    f = _normalize(g2, f, cfg.norm)
    # all bracket ratios are 0-homogeneous, so work with max-scaled copies to
    # keep f^(p-1) and g away from under/overflow for large p
    lo = hi = np.nan
    gs = op.apply(g2, p, f / f.max())
    for k in range(1, int(cfg.max_iter) + 1):
        h = op.abs_power(gs / gs.max(), 1.0 / q)
        f = _normalize(g2, h, cfg.norm)
        fs = f / f.max()
        gs = op.apply(g2, p, fs)
        ratio = gs / op.abs_power(fs, q)
        lo, hi = float(ratio.min()), float(ratio.max())
        if trace is not None:
            trace.append(lo, hi)
        if (hi - lo) / (hi + lo) < cfg.eps:
            lam = 0.5 * (hi + lo) - c
            res = verify_eigenpair(g, p, lam, f)
            return Eigenpair(lam, f, res), trace
    raise MaxIterExceeded(
        f"relative gap {(hi - lo) / (hi + lo):.3e} still >= eps={cfg.eps} after {cfg.max_iter} iterations",
        lower=lo - c, upper=hi - c, iters=int(cfg.max_iter), trace=trace,
    )
