"""Even-p tensor form of the p-Laplacian eigenproblem.

For even p the eigen-equation Delta_p f = lam Phi_p(f) is the B-eigenproblem
T f = lam B f of two symmetric order-p tensors.  T is supported on index
patterns with at most two distinct indices, so it is stored factored: one
diagonal value per vertex and one (w, sigma) pair per edge.

Two contractions are provided.  :func:`tensor_apply` uses the binomial
expansion over edges; :func:`tensor_apply_naive` enumerates every index tuple
through the entry oracle.  They share no arithmetic with :func:`plap.operator.apply`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import OddP, TooLarge
from .graph import SignedGraph

MAX_P = 30
NAIVE_LIMIT = 10**6


@dataclass(frozen=True, eq=False)
class TensorPair:
    p: int
    n: int
    diag: np.ndarray  # sum_j w_ij + kappa_i
    src: np.ndarray
    dst: np.ndarray
    w: np.ndarray
    sigma: np.ndarray
    b_diag: np.ndarray  # mu_i
    _lookup: dict = field(repr=False, default_factory=dict)
    _cache: dict = field(repr=False, default_factory=dict)


def build_tensor_pair(g: SignedGraph, p: int) -> TensorPair:
    if p != int(p) or int(p) % 2 or p < 2:
        raise OddP(f"tensor form needs an even integer p >= 2, got {p}")
    p = int(p)
    if p > MAX_P:
        raise TooLarge(f"p={p} exceeds the supported maximum {MAX_P}")
    wsum = np.bincount(g.src, g.w, minlength=g.n) + np.bincount(g.dst, g.w, minlength=g.n)
    lookup = {}
    for k, (a, b) in enumerate(zip(g.src.tolist(), g.dst.tolist())):
        lookup[(a, b)] = k
        lookup[(b, a)] = k
    return TensorPair(
        p=p, n=g.n, diag=wsum + g.kappa,
        src=g.src, dst=g.dst, w=g.w, sigma=g.sigma, b_diag=g.mu.copy(), _lookup=lookup,
    )


def entries_T(t: TensorPair, idx) -> np.ndarray:
    """Entries of T for an array of 0-based index tuples, shape ``(K, p)``."""
    idx = np.asarray(idx, dtype=np.int64).reshape(-1, t.p)
    srt = np.sort(idx, axis=1)
    distinct = 1 + np.count_nonzero(srt[:, 1:] != srt[:, :-1], axis=1)
    out = np.zeros(idx.shape[0])
    one = distinct == 1
    out[one] = t.diag[srt[one, 0]]
    for r in np.flatnonzero(distinct == 2):
        a, b = int(srt[r, 0]), int(srt[r, -1])
        k = t._lookup.get((a, b))
        if k is None:
            continue
        l_a = int(np.count_nonzero(srt[r] == a))
        out[r] = (-t.sigma[k]) ** (t.p - l_a) * t.w[k]
    return out


def entry_T(t: TensorPair, *index: int) -> float:
    """Single entry of T with 1-based indices, e.g. ``entry_T(t, 1, 4, 4, 4)``."""
    if len(index) != t.p:
        raise ValueError(f"need {t.p} indices, got {len(index)}")
    return float(entries_T(t, [i - 1 for i in index])[0])


def entry_B(t: TensorPair, *index: int) -> float:
    if len(index) != t.p:
        raise ValueError(f"need {t.p} indices, got {len(index)}")
    return float(t.b_diag[index[0] - 1]) if len(set(index)) == 1 else 0.0


def tensor_apply(t: TensorPair, f) -> np.ndarray:
    """(T f)_i = d_i f_i^(p-1) + sum_{j~i} sum_l C(p-1,l) (-sigma)^l w f_i^(p-1-l) f_j^l."""
    f = np.asarray(f, dtype=float)
    p = t.p
    out = t.diag * f ** (p - 1)
    fa, fb = f[t.src], f[t.dst]
    ta = np.zeros(t.src.size)
    tb = np.zeros(t.src.size)
    for l in range(1, p):
        coef = comb(p - 1, l) * (-t.sigma) ** l * t.w
        ta += coef * fa ** (p - 1 - l) * fb ** l
        tb += coef * fb ** (p - 1 - l) * fa ** l
    out += np.bincount(t.src, ta, minlength=t.n)
    out += np.bincount(t.dst, tb, minlength=t.n)
    return out


def tensor_apply_naive(t: TensorPair, f) -> np.ndarray:
    """Brute-force contraction over all n^(p-1) tuples per row (small cases only)."""
    f = np.asarray(f, dtype=float)
    n, p = t.n, t.p
    if n ** (p - 1) > NAIVE_LIMIT:
        raise TooLarge(f"n^(p-1) = {n ** (p - 1)} exceeds {NAIVE_LIMIT}")
    # f (x) f (x) ... (x) f, raveled in the same C order as the tuples
    prod = np.ones(1)
    for _ in range(p - 1):
        prod = np.multiply.outer(prod, f).ravel()
    if n ** p <= NAIVE_LIMIT:
        return _dense_rows(t) @ prod
    return np.array([_row(t, i) @ prod for i in range(n)])


def _row(t, i):
    n, p = t.n, t.p
    rest = np.indices((n,) * (p - 1)).reshape(p - 1, -1).T
    return entries_T(t, np.hstack([np.full((rest.shape[0], 1), i), rest]))


def _dense_rows(t):
    if "dense" not in t._cache:
        t._cache["dense"] = np.array([_row(t, i) for i in range(t.n)])
    return t._cache["dense"]


def b_apply(t: TensorPair, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    return t.b_diag * f ** (t.p - 1)


def tensor_residual(t: TensorPair, lam: float, f) -> float:
    """max_i |(T f)_i - lam (B f)_i|."""
    return float(np.max(np.abs(tensor_apply(t, f) - lam * b_apply(t, f))))


def rel_dev(a, b) -> float:
    """max|a - b| / max|b| (absolute when b vanishes)."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    scale = float(np.max(np.abs(b))) if b.size else 0.0
    return float(np.max(np.abs(a - b))) / (scale if scale > 0 else 1.0)


def compare_paths(g: SignedGraph, p: int, trials: int, seed: int):
    """Worst relative deviation over random vectors between the contraction paths.

    Returns ``(vs_operator, vs_naive)``; ``vs_naive`` is ``None`` when the brute
    force path is too large to run.
    """
    from .operator import apply

    t = build_tensor_pair(g, p)
    rng = np.random.default_rng(seed)
    feasible = g.n ** (p - 1) <= NAIVE_LIMIT
    dev_op, dev_naive = 0.0, (0.0 if feasible else None)
    for _ in range(trials):
        f = rng.standard_normal(g.n)
        tf = tensor_apply(t, f)
        dev_op = max(dev_op, rel_dev(tf, g.mu * apply(g, p, f)))
        if feasible:
            dev_naive = max(dev_naive, rel_dev(tf, tensor_apply_naive(t, f)))
    return dev_op, dev_naive
