"""The graph p-Laplacian and the pointwise maps it is built from."""

from __future__ import annotations

import numpy as np

from .errors import BadP, ZeroFunction
from .graph import SignedGraph


def check_p(p) -> float:
    p = float(p)
    if not p > 1 or not np.isfinite(p):
        raise BadP(f"p must be a finite real > 1, got {p}")
    return p


def abs_power(t, q):
    """|t|**q for real q > 0 (pow(0, q) is exactly 0)."""
    out = np.array(t, dtype=float)
    np.abs(out, out=out)
    return np.power(out, q, out=out)


def signed_power(f, t):
    """Entrywise |f_i|^t sign(f_i)."""
    f = np.asarray(f, dtype=float)
    out = abs_power(f, t)
    out = np.copysign(out, f, out=out)
    out[f == 0] = 0.0  # no signed zeros
    return out


def phi_p(t, p):
    """Phi_p(t) = |t|^(p-2) t, with Phi_p(0) = 0.  Accepts scalars or arrays."""
    p = check_p(p)
    out = signed_power(t, p - 1)
    return float(out) if np.ndim(out) == 0 else out


def apply(g: SignedGraph, p, f) -> np.ndarray:
    """(Delta_p f)_i = (sum_j w_ij Phi_p(f_i - sigma_ij f_j) + kappa_i Phi_p(f_i)) / mu_i."""
    p = check_p(p)
    f = np.asarray(f, dtype=float)
    if f.shape != (g.n,):
        raise ValueError(f"function has shape {f.shape}, graph has {g.n} vertices")
    # f_j - s f_i = -s (f_i - s f_j) for s = +-1, and Phi_p is odd
    signless = g.is_signless()
    t = f[g.src]
    if signless:
        t += f[g.dst]
    else:
        t -= g.sigma * f[g.dst]
    t = signed_power(t, p - 1) if not signless or f.min() < 0 else np.power(t, p - 1, out=t)
    if not g.unit_weights:
        t *= g.w
    out = np.bincount(g.src, t, minlength=g.n)
    if not signless:
        t *= -g.sigma
    out += np.bincount(g.dst, t, minlength=g.n)
    out += g.kappa * signed_power(f, p - 1)
    out /= g.mu
    return out


def p_norm(g: SignedGraph, f, q: float = 2.0) -> float:
    f = np.asarray(f, dtype=float)
    s = float(np.sum(g.mu * abs_power(f, q)))
    return s ** (1.0 / q) if s > 0 else 0.0


def energy(g: SignedGraph, p, f) -> float:
    """Numerator of the Rayleigh quotient: edge p-energy plus potential term."""
    p = check_p(p)
    f = np.asarray(f, dtype=float)
    e = np.sum(g.w * abs_power(f[g.src] - g.sigma * f[g.dst], p))
    return float(e + np.sum(g.kappa * abs_power(f, p)))


def rayleigh(g: SignedGraph, p, f) -> float:
    p = check_p(p)
    f = np.asarray(f, dtype=float)
    den = float(np.sum(g.mu * abs_power(f, p)))
    if not den > 0:
        raise ZeroFunction("Rayleigh quotient of the zero function")
    return energy(g, p, f) / den


def shift_potential(g: SignedGraph):
    """Return ``(g2, c)`` with kappa' = kappa + c mu >= 0; eigenvalues shift by +c."""
    if g.n == 0 or g.kappa.min() >= 0:
        return g, 0.0
    c = float(np.max(np.abs(g.kappa / g.mu)))
    kappa = g.kappa + c * g.mu
    # kill roundoff at the vertex that attains the max
    kappa[kappa < 0] = 0.0
    return g.replace(kappa=kappa), c
