"""Signed weighted graphs: data model, validation, generators, subgraph test.

Vertices are labelled ``1..n`` at every public boundary.  Internally the edge
list is stored as 0-based numpy arrays (``src``, ``dst``, ``w``, ``sigma``) so
that operators can run one vectorised pass over the edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    BadLabel,
    BadParams,
    BadSignature,
    DuplicateEdge,
    NonpositiveMeasure,
    NonpositiveWeight,
    SelfLoop,
    TooLargeForSearch,
)

SUBGRAPH_SEARCH_LIMIT = 12


def _frozen(a, dtype):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SignedGraph:
    """Immutable signed graph ``(V, E, w, mu, kappa, sigma)``.

    Use :meth:`from_edges` to build one from 1-based ``(i, j, w, sigma)``
    tuples; it validates on the way in.
    """

    n: int
    mu: np.ndarray
    kappa: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    w: np.ndarray
    sigma: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence], mu=None, kappa=None) -> "SignedGraph":
        edges = list(edges)
        if edges:
            rows = []
            for e in edges:
                e = tuple(e)
                if len(e) == 3:
                    e = (*e, -1)
                if len(e) != 4:
                    raise BadParams("edges must be (i, j, w[, sigma]) tuples")
                rows.append(e)
            ii, jj, ww, ss = np.array(rows, dtype=float).T
        else:
            ii = jj = ww = ss = np.zeros(0)
        return cls.from_arrays(n, ii, jj, ww, ss, mu=mu, kappa=kappa, one_based=True)

    @classmethod
    def from_arrays(cls, n, i, j, w, sigma, mu=None, kappa=None, one_based=True) -> "SignedGraph":
        n = int(n)
        if n < 0:
            raise BadLabel(f"vertex count must be nonnegative, got {n}")
        i = np.asarray(i, dtype=float)
        j = np.asarray(j, dtype=float)
        off = 1 if one_based else 0
        for arr in (i, j):
            bad = np.flatnonzero((arr != np.round(arr)) | (arr < off) | (arr > n - 1 + off))
            if bad.size:
                k = bad[0]
                raise BadLabel(f"edge #{k + 1} ({_lbl(i[k], off)}, {_lbl(j[k], off)}) uses a label outside 1..{n}")
        g = cls(
            n=n,
            mu=_frozen(np.ones(n) if mu is None else mu, float),
            kappa=_frozen(np.zeros(n) if kappa is None else kappa, float),
            src=_frozen(i.astype(np.int64) - off, np.int64),
            dst=_frozen(j.astype(np.int64) - off, np.int64),
            w=_frozen(w, float),
            sigma=_frozen(sigma, float),
        )
        validate(g)
        return g

    @property
    def m(self) -> int:
        return int(self.src.size)

    @property
    def edges(self) -> list:
        """Edges as 1-based ``(i, j, w, sigma)`` tuples in storage order."""
        return [
            (int(a) + 1, int(b) + 1, float(c), int(s))
            for a, b, c, s in zip(self.src, self.dst, self.w, self.sigma)
        ]

    def degrees(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n) + np.bincount(self.dst, minlength=self.n)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def is_signless(self) -> bool:
        return self._signless

    # arrays are read-only, so these flags can be cached on the instance
    @cached_property
    def _signless(self) -> bool:
        return bool(np.all(self.sigma == -1))

    @cached_property
    def unit_weights(self) -> bool:
        return bool(np.all(self.w == 1))

    def replace(self, *, mu=None, kappa=None, w=None, sigma=None) -> "SignedGraph":
        return SignedGraph.from_arrays(
            self.n, self.src, self.dst,
            self.w if w is None else w,
            self.sigma if sigma is None else sigma,
            mu=self.mu if mu is None else mu,
            kappa=self.kappa if kappa is None else kappa,
            one_based=False,
        )

    def adjacency(self) -> list:
        adj = [[] for _ in range(self.n)]
        for a, b in zip(self.src.tolist(), self.dst.tolist()):
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def __eq__(self, other):
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self.n == other.n and all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("mu", "kappa", "src", "dst", "w", "sigma")
        )

    __hash__ = None

    def __repr__(self):
        return f"SignedGraph(n={self.n}, m={self.m})"


def _lbl(x, off):
    x = float(x)
    return int(x) + 1 - off if x == int(x) else x


def validate(g: SignedGraph) -> None:
    """Check every graph invariant; raise the first violation found."""
    n = g.n
    if g.mu.shape != (n,):
        raise BadLabel(f"mu has {g.mu.size} entries, expected {n}")
    if g.kappa.shape != (n,):
        raise BadLabel(f"kappa has {g.kappa.size} entries, expected {n}")
    m = g.src.size
    if not (g.dst.size == g.w.size == g.sigma.size == m):
        raise BadParams("edge arrays differ in length")
    if np.any((g.src < 0) | (g.src >= n) | (g.dst < 0) | (g.dst >= n)):
        k = int(np.flatnonzero((g.src < 0) | (g.src >= n) | (g.dst < 0) | (g.dst >= n))[0])
        raise BadLabel(f"edge #{k + 1} uses a label outside 1..{n}")
    bad = np.flatnonzero(g.src == g.dst)
    if bad.size:
        k = int(bad[0])
        raise SelfLoop(f"edge #{k + 1} ({g.src[k] + 1}, {g.dst[k] + 1})")
    bad = np.flatnonzero(~(g.w > 0) | ~np.isfinite(g.w))
    if bad.size:
        k = int(bad[0])
        raise NonpositiveWeight(f"edge #{k + 1} ({g.src[k] + 1}, {g.dst[k] + 1}) has w={g.w[k]}")
    bad = np.flatnonzero((g.sigma != 1) & (g.sigma != -1))
    if bad.size:
        k = int(bad[0])
        raise BadSignature(f"edge #{k + 1} ({g.src[k] + 1}, {g.dst[k] + 1}) has sigma={g.sigma[k]}")
    bad = np.flatnonzero(~(g.mu > 0) | ~np.isfinite(g.mu))
    if bad.size:
        k = int(bad[0])
        raise NonpositiveMeasure(f"vertex {k + 1} has mu={g.mu[k]}")
    if not np.all(np.isfinite(g.kappa)):
        k = int(np.flatnonzero(~np.isfinite(g.kappa))[0])
        raise BadParams(f"vertex {k + 1} has non-finite kappa")
    if m:
        lo = np.minimum(g.src, g.dst)
        hi = np.maximum(g.src, g.dst)
        key = lo * n + hi
        order = np.argsort(key, kind="stable")
        dup = np.flatnonzero(key[order][1:] == key[order][:-1])
        if dup.size:
            k = int(np.sort(order[dup + 1])[0])
            raise DuplicateEdge(f"edge #{k + 1} ({g.src[k] + 1}, {g.dst[k] + 1}) repeats an earlier pair")


def is_connected(g: SignedGraph) -> bool:
    """Breadth-first search on the underlying unsigned graph."""
    if g.n <= 1:
        return True
    return len(components(g)) == 1


def components(g: SignedGraph) -> list:
    """Connected components as sorted lists of 0-based vertex indices."""
    adj = g.adjacency()
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        comp = [s]
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def induced(g: SignedGraph, vertices: Sequence[int]) -> SignedGraph:
    """Subgraph induced on 0-based ``vertices``, relabelled in the given order."""
    vertices = list(vertices)
    pos = -np.ones(g.n, dtype=np.int64)
    pos[vertices] = np.arange(len(vertices))
    keep = (pos[g.src] >= 0) & (pos[g.dst] >= 0)
    return SignedGraph.from_arrays(
        len(vertices), pos[g.src[keep]], pos[g.dst[keep]], g.w[keep], g.sigma[keep],
        mu=g.mu[vertices], kappa=g.kappa[vertices], one_based=False,
    )


# generators ---------------------------------------------------------------

def _from_pairs(n, pairs, sigma=-1):
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    m = pairs.shape[0]
    sig = np.broadcast_to(np.asarray(sigma, dtype=float), (m,)) if np.ndim(sigma) == 0 else np.asarray(sigma, float)
    if sig.shape != (m,):
        raise BadParams(f"per-edge sigma has {sig.size} values for {m} edges")
    return SignedGraph.from_arrays(n, pairs[:, 0], pairs[:, 1], np.ones(m), sig, one_based=False)


def path(n: int, sigma=-1) -> SignedGraph:
    _need(n >= 1, f"path needs n >= 1, got {n}")
    return _from_pairs(n, [(k, k + 1) for k in range(n - 1)], sigma)


def cycle(n: int, sigma=-1) -> SignedGraph:
    _need(n >= 3, f"cycle needs n >= 3, got {n}")
    return _from_pairs(n, [(k, (k + 1) % n) for k in range(n)], sigma)


def complete(n: int, sigma=-1) -> SignedGraph:
    _need(n >= 1, f"complete needs n >= 1, got {n}")
    iu, ju = np.triu_indices(n, 1)
    return _from_pairs(n, np.column_stack([iu, ju]), sigma)


def empty(n: int) -> SignedGraph:
    _need(n >= 1, f"empty needs n >= 1, got {n}")
    return _from_pairs(n, [])


def star(d: int, sigma=-1) -> SignedGraph:
    """K_{1,d}; the centre is vertex 1."""
    _need(d >= 1, f"star needs d >= 1, got {d}")
    return _from_pairs(d + 1, [(0, k) for k in range(1, d + 1)], sigma)


def hypercube(k: int, sigma=-1) -> SignedGraph:
    _need(k >= 1, f"hypercube needs k >= 1, got {k}")
    n = 1 << k
    pairs = [(v, v ^ (1 << b)) for v in range(n) for b in range(k) if v < v ^ (1 << b)]
    return _from_pairs(n, pairs, sigma)


def join(g: SignedGraph, h: SignedGraph, sigma=-1) -> SignedGraph:
    """G v H: H's vertices follow G's, plus every cross edge (weight 1)."""
    n = g.n + h.n
    cross = np.array([(a, g.n + b) for a in range(g.n) for b in range(h.n)], dtype=np.int64).reshape(-1, 2)
    src = np.concatenate([g.src, h.src + g.n, cross[:, 0]])
    dst = np.concatenate([g.dst, h.dst + g.n, cross[:, 1]])
    w = np.concatenate([g.w, h.w, np.ones(len(cross))])
    sig = np.concatenate([g.sigma, h.sigma, np.full(len(cross), float(sigma))])
    return SignedGraph.from_arrays(
        n, src, dst, w, sig,
        mu=np.concatenate([g.mu, h.mu]), kappa=np.concatenate([g.kappa, h.kappa]), one_based=False,
    )


def gnm(n: int, m: int, seed: int, sigma=-1) -> SignedGraph:
    """Uniform random graph with exactly ``m`` distinct edges."""
    total = n * (n - 1) // 2
    _need(n >= 1, f"gnm needs n >= 1, got {n}")
    _need(0 <= m <= total, f"m={m} exceeds n(n-1)/2={total}")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(total, size=m, replace=False)).astype(np.int64)
    i, j = _unrank_pairs(n, idx)
    return _from_pairs(n, np.column_stack([i, j]), sigma)


def _unrank_pairs(n, idx):
    # row-major enumeration of pairs (i, j), i < j
    starts = np.concatenate([[0], np.cumsum(np.arange(n - 1, 0, -1))])
    i = np.searchsorted(starts, idx, side="right") - 1
    j = idx - starts[i] + i + 1
    return i, j


def _need(cond, msg):
    if not cond:
        raise BadParams(msg)


GENERATORS = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "empty": empty,
    "star": star,
    "hypercube": hypercube,
    "gnm": gnm,
}


def generate(kind: str, *args, seed: Optional[int] = None, sigma=-1, **kwargs) -> SignedGraph:
    """Dispatch to a named generator (``path``, ``cycle``, ``star``, ``join`` ...)."""
    if kind == "join":
        return join(*args, sigma=sigma)
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise BadParams(f"unknown graph kind {kind!r}") from None
    if kind == "gnm":
        if seed is None:
            raise BadParams("gnm needs a seed")
        return fn(*args, seed=seed, sigma=sigma, **kwargs)
    if kind == "empty":
        return fn(*args, **kwargs)
    return fn(*args, sigma=sigma, **kwargs)


# subgraph relation ----------------------------------------------------------

def _edge_map(g):
    out = {}
    for a, b, w in zip(g.src.tolist(), g.dst.tolist(), g.w.tolist()):
        out[(a, b)] = w
        out[(b, a)] = w
    return out


def is_subgraph(gp: SignedGraph, g: SignedGraph, mapping: Optional[Sequence[int]] = None) -> bool:
    """Whether ``gp`` embeds in ``g`` (signature ignored).

    ``mapping`` is a 1-based list: ``mapping[k]`` is the image of vertex k+1.
    Without it, all injections are searched (both graphs at most 12 vertices).
    """
    ge = _edge_map(g)
    gp_edges = list(zip(gp.src.tolist(), gp.dst.tolist(), gp.w.tolist()))

    def vertex_ok(a, b):
        return gp.mu[a] == g.mu[b] and gp.kappa[a] == g.kappa[b]

    if mapping is not None:
        phi = [int(x) - 1 for x in mapping]
        if len(phi) != gp.n or len(set(phi)) != gp.n or any(not 0 <= x < g.n for x in phi):
            raise BadParams("mapping must be an injection from gp's vertices into g's")
        if not all(vertex_ok(a, phi[a]) for a in range(gp.n)):
            return False
        return all(ge.get((phi[a], phi[b])) == w for a, b, w in gp_edges)

    if gp.n > SUBGRAPH_SEARCH_LIMIT or g.n > SUBGRAPH_SEARCH_LIMIT:
        raise TooLargeForSearch(
            f"exhaustive search capped at {SUBGRAPH_SEARCH_LIMIT} vertices (got {gp.n}, {g.n}); pass a mapping"
        )
    if gp.n > g.n:
        return False
    # backtracking over injections, checking edges back to already-placed vertices
    gp_adj = [dict() for _ in range(gp.n)]
    for a, b, w in gp_edges:
        gp_adj[a][b] = w
        gp_adj[b][a] = w
    order = sorted(range(gp.n), key=lambda v: -len(gp_adj[v]))
    g_deg = g.degrees()
    phi = [-1] * gp.n
    used = [False] * g.n

    def place(k):
        if k == gp.n:
            return True
        a = order[k]
        for b in range(g.n):
            if used[b] or g_deg[b] < len(gp_adj[a]) or not vertex_ok(a, b):
                continue
            if all(phi[c] < 0 or ge.get((b, phi[c])) == w for c, w in gp_adj[a].items()):
                phi[a] = b
                used[b] = True
                if place(k + 1):
                    return True
                phi[a] = -1
                used[b] = False
        return False

    return place(0)
