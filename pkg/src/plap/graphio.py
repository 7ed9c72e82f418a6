"""Reading and writing the ``pgraph`` text format.

::

    pgraph 1            # magic + version
    n 4
    v 1 2.0 1.0         # v <label> <mu> <kappa>
    e 1 2 1.0 +1        # e <i> <j> <w> <sigma>

Vertices without a ``v`` line get mu = 1, kappa = 0.
"""

from __future__ import annotations

import io
import os
from typing import Union

import numpy as np

from .errors import GraphError, ParseError, VersionMismatch
from .graph import SignedGraph

MAGIC = "pgraph"
VERSION = 1


def _num(x):
    return format(float(x), ".17g")


def format_graph(g: SignedGraph) -> str:
    out = [f"{MAGIC} {VERSION}", f"n {g.n}"]
    for i in range(g.n):
        out.append(f"v {i + 1} {_num(g.mu[i])} {_num(g.kappa[i])}")
    for a, b, w, s in zip(g.src, g.dst, g.w, g.sigma):
        out.append(f"e {a + 1} {b + 1} {_num(w)} {'+1' if s > 0 else '-1'}")
    return "\n".join(out) + "\n"


def write_graph(g: SignedGraph, path: Union[str, os.PathLike]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g))


def parse_graph_text(text: str) -> SignedGraph:
    n = None
    header = False
    mu = kappa = None
    seen_v = set()
    edges = []
    edge_lines = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if not header:
                if tok[0] != MAGIC or len(tok) != 2:
                    raise ParseError(f"expected '{MAGIC} {VERSION}' header", lineno)
                if tok[1] != str(VERSION):
                    raise VersionMismatch(f"unsupported version {tok[1]} (expected {VERSION})", lineno)
                header = True
            elif tok[0] == "n":
                if n is not None or len(tok) != 2:
                    raise ParseError("malformed or repeated 'n' record", lineno)
                n = int(tok[1])
                if n < 0:
                    raise ParseError("vertex count must be nonnegative", lineno)
                mu, kappa = np.ones(n), np.zeros(n)
            elif tok[0] == "v":
                if n is None:
                    raise ParseError("'v' record before 'n'", lineno)
                if len(tok) != 4:
                    raise ParseError("expected 'v <label> <mu> <kappa>'", lineno)
                i = int(tok[1])
                if not 1 <= i <= n:
                    raise ParseError(f"BadLabel: vertex {i} outside 1..{n}", lineno)
                if i in seen_v:
                    raise ParseError(f"vertex {i} listed twice", lineno)
                seen_v.add(i)
                mu[i - 1], kappa[i - 1] = float(tok[2]), float(tok[3])
                if not mu[i - 1] > 0:
                    raise ParseError(f"NonpositiveMeasure: vertex {i} has mu={tok[2]}", lineno)
            elif tok[0] == "e":
                if n is None:
                    raise ParseError("'e' record before 'n'", lineno)
                if len(tok) != 5:
                    raise ParseError("expected 'e <i> <j> <w> <sigma>'", lineno)
                i, j, w, s = int(tok[1]), int(tok[2]), float(tok[3]), int(tok[4])
                if i == j:
                    raise ParseError(f"SelfLoop: edge ({i}, {j})", lineno)
                edges.append((i, j, w, s))
                edge_lines.append(lineno)
            else:
                raise ParseError(f"unknown record {tok[0]!r}", lineno)
        except ValueError as exc:
            raise ParseError(f"bad number: {exc}", lineno) from None
    if not header:
        raise ParseError("empty file (missing header)")
    if n is None:
        raise ParseError("missing 'n' record")
    try:
        return SignedGraph.from_edges(n, edges, mu=mu, kappa=kappa)
    except GraphError as exc:
        # point at the offending edge line when the message names an edge
        lineno = None
        msg = str(exc)
        if msg.split(": ", 1)[-1].startswith("edge #"):
            k = int(msg.split("edge #", 1)[1].split()[0]) - 1
            lineno = edge_lines[k]
        raise ParseError(msg, lineno) from exc


def parse_graph(path: Union[str, os.PathLike]) -> SignedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())
