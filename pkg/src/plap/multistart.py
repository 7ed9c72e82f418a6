"""Eigenpairs of Delta_p for even p by damped Newton from many random starts.

Each start solves the square system

    mu_i (Delta_p f)_i - lam mu_i Phi_p(f_i) = 0     (i = 1..n)
    sum_i mu_i |f_i|^p - 1 = 0

for (f, lam).  Converged roots are merged up to the sign flip f -> -f.  The
result lists what was found; nothing certifies that the list is complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import operator as op
from .errors import BadParams, NoConvergence, OddP
from .graph import SignedGraph
from .power import Eigenpair, verify_eigenpair

MAX_N = 12
MAX_NEWTON_STEPS = 200
MAX_HALVINGS = 40
# give up when ||F|| fell by less than 1% over this many steps (stuck at a
# local minimum of ||F|| that is not a root)
STALL_WINDOW = 10
BATCH = 500


@dataclass
class EigenpairList:
    pairs: list = field(default_factory=list)
    starts_used: int = 0
    converged_count: int = 0

    @property
    def eigenvalues(self) -> list:
        return [e.lam for e in self.pairs]

    def __len__(self):
        return len(self.pairs)


class _Batch:
    """Eigen-system residual and Jacobian evaluated for many (f, lam) rows at once."""

    def __init__(self, g: SignedGraph, p):
        self.g, self.p, self.n = g, p, g.n
        m = g.m
        self.inc_src = np.zeros((m, g.n))
        self.inc_src[np.arange(m), g.src] = 1.0
        self.inc_dst = np.zeros((m, g.n))
        self.inc_dst[np.arange(m), g.dst] = 1.0

    def residual(self, X):
        g, p = self.g, self.p
        f, lam = X[:, :-1], X[:, -1:]
        t = g.w * op.signed_power(f[:, g.src] - g.sigma * f[:, g.dst], p - 1)
        r = t @ self.inc_src + (-g.sigma * t) @ self.inc_dst
        r += (g.kappa - lam * g.mu) * op.signed_power(f, p - 1)
        norm_row = np.sum(g.mu * op.abs_power(f, p), axis=1, keepdims=True) - 1.0
        return np.hstack([r, norm_row])

    def jacobian(self, X):
        g, p, n = self.g, self.p, self.n
        f, lam = X[:, :-1], X[:, -1:]
        J = np.zeros((X.shape[0], n + 1, n + 1))
        a = (p - 1) * g.w * op.abs_power(f[:, g.src] - g.sigma * f[:, g.dst], p - 2)
        diag = a @ (self.inc_src + self.inc_dst)
        diag += (p - 1) * (g.kappa - lam * g.mu) * op.abs_power(f, p - 2)
        idx = np.arange(n)
        J[:, idx, idx] = diag
        J[:, g.src, g.dst] = -g.sigma * a
        J[:, g.dst, g.src] = -g.sigma * a
        phi = g.mu * op.signed_power(f, p - 1)
        J[:, :n, n] = -phi
        J[:, n, :n] = p * phi
        return J


def _solve(J, F):
    out = np.empty_like(F)
    for k in range(J.shape[0]):
        try:
            out[k] = np.linalg.solve(J[k], -F[k])
        except np.linalg.LinAlgError:
            out[k] = np.linalg.lstsq(J[k], -F[k], rcond=None)[0]
    return out


def newton_batch(g: SignedGraph, p, X0, tol=1e-10):
    """Damped Newton run independently on every row ``(f, lam)`` of ``X0``.

    Returns ``(X, ok)``.  Each row follows exactly the path it would follow
    alone: backtracking halves the step until ||F|| decreases.
    """
    sysb = _Batch(g, p)
    X = np.array(X0, dtype=float)
    S = X.shape[0]
    F = sysb.residual(X)
    nrm = np.linalg.norm(F, axis=1)
    ok = np.max(np.abs(F), axis=1) <= tol
    live = ~ok
    hist = [nrm.copy()]
    for _ in range(MAX_NEWTON_STEPS):
        rows = np.flatnonzero(live)
        if rows.size == 0:
            break
        with np.errstate(all="ignore"):
            try:
                step = -np.linalg.solve(sysb.jacobian(X[rows]), F[rows][..., None])[..., 0]
            except np.linalg.LinAlgError:
                step = _solve(sysb.jacobian(X[rows]), F[rows])
        bad = ~np.all(np.isfinite(step), axis=1)
        live[rows[bad]] = False
        rows, step = rows[~bad], step[~bad]
        t = np.ones(rows.size)
        pending = np.ones(rows.size, dtype=bool)
        for _ in range(MAX_HALVINGS):
            pr = np.flatnonzero(pending)
            if pr.size == 0:
                break
            Xn = X[rows[pr]] + t[pr, None] * step[pr]
            Fn = sysb.residual(Xn)
            nn = np.linalg.norm(Fn, axis=1)
            acc = nn < nrm[rows[pr]]
            hit = rows[pr[acc]]
            X[hit], F[hit], nrm[hit] = Xn[acc], Fn[acc], nn[acc]
            pending[pr[acc]] = False
            t[pr[~acc]] *= 0.5
        live[rows[pending]] = False
        hist.append(nrm.copy())
        done = np.max(np.abs(F), axis=1) <= tol
        ok |= done & live
        live &= ~done
        if len(hist) > STALL_WINDOW:
            live &= ~(nrm > 0.99 * hist[-1 - STALL_WINDOW])
    ok |= np.max(np.abs(F), axis=1) <= tol
    return X, ok


def newton(g: SignedGraph, p, f0, lam0, tol=1e-10):
    """Damped Newton from a single start; returns ``(f, lam, ok)``."""
    X, ok = newton_batch(g, p, np.append(np.asarray(f0, dtype=float), lam0)[None, :], tol)
    return X[0, :-1], float(X[0, -1]), bool(ok[0])


def random_sphere_point(g: SignedGraph, p, rng) -> np.ndarray:
    """Point of the mu-weighted p-sphere, uniform under the cone measure."""
    # |x_i| ~ Gamma(1/p)^(1/p) with random sign has density proportional to exp(-|x|^p)
    x = rng.gamma(1.0 / p, size=g.n) ** (1.0 / p) * rng.choice([-1.0, 1.0], size=g.n)
    x = x * g.mu ** (-1.0 / p)
    return x / op.p_norm(g, x, p)


def _canonical(f):
    k = int(np.argmax(np.abs(f)))
    return f if f[k] > 0 else -f


def _same(a: Eigenpair, b: Eigenpair, tol):
    if abs(a.lam - b.lam) > tol * max(1.0, abs(a.lam)):
        return False
    return min(np.linalg.norm(a.f - b.f), np.linalg.norm(a.f + b.f)) <= np.sqrt(tol)


def dedupe(cands, tol) -> list:
    cands = sorted(cands, key=lambda e: (-e.lam, tuple(np.round(e.f, 8))))
    kept = []
    for e in cands:
        if not any(_same(e, k, tol) for k in kept):
            kept.append(e)
    return kept


def find_eigenpairs(g: SignedGraph, p: int, n_starts: int = 2000, seed: int = 0,
                    newton_tol: float = 1e-10, dedupe_tol: float = 1e-6) -> EigenpairList:
    if p != int(p) or int(p) % 2 or p < 2:
        raise OddP(f"multistart solver needs an even integer p, got {p}")
    p = int(p)
    if g.n > MAX_N:
        raise BadParams(f"n={g.n} exceeds the desk-scale limit {MAX_N}")
    if n_starts < 1:
        raise BadParams("n_starts must be >= 1")
    # one independent stream per start, so results do not depend on batching
    X0 = np.empty((n_starts, g.n + 1))
    for s in range(n_starts):
        f0 = random_sphere_point(g, p, np.random.default_rng([seed, s]))
        X0[s] = np.append(f0, op.rayleigh(g, p, f0))
    found = []
    for lo in range(0, n_starts, BATCH):
        X, ok = newton_batch(g, p, X0[lo:lo + BATCH], newton_tol)
        for f, lam in ((x[:-1], float(x[-1])) for x in X[ok]):
            res = verify_eigenpair(g, p, lam, f)
            if res <= newton_tol:
                found.append(Eigenpair(lam, _canonical(f), res))
    out = EigenpairList(dedupe(found, dedupe_tol), starts_used=n_starts, converged_count=len(found))
    if not out.pairs:
        raise NoConvergence(f"no start converged out of {n_starts}", result=out)
    return out
