"""Command-line entry point: ``plap <subcommand> ...``.

Exit codes: 0 success (or an inconclusive criterion), 1 usage error,
2 solver or validation error, 3 criterion proved non-containment.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench, criterion, graph, graphio, multistart, tensor
from .errors import PLapError
from .power import SolverConfig, solve_max, verify_eigenpair

EXIT_USAGE = 1
EXIT_ERROR = 2
EXIT_NOT_SUBGRAPH = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def fmt(x) -> str:
    return format(float(x), ".17g")


def _sigma(s):
    if s in ("+1", "1"):
        return 1
    if s == "-1":
        return -1
    raise argparse.ArgumentTypeError("sigma must be +1 or -1")


def _floats(s):
    try:
        return np.array([float(x) for x in s.replace(",", " ").split()])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {s!r}") from None


def _grid(s):
    try:
        return criterion.parse_grid(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _edges(s):
    try:
        a, b, k = (int(x) for x in s.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("edges must look like lo:hi:steps") from None
    return bench.edge_counts(a, b, k)


def _emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(a):
    kind = a.type
    need = {"path": "n", "cycle": "n", "complete": "n", "empty": "n", "star": "d", "hypercube": "k", "gnm": "n"}
    if kind == "join":
        if not (a.left and a.right):
            raise UsageError("join needs --left and --right graph files")
        g = graph.join(graphio.parse_graph(a.left), graphio.parse_graph(a.right), sigma=a.sigma)
    else:
        arg = getattr(a, need[kind])
        if arg is None:
            raise UsageError(f"{kind} needs --{need[kind]}")
        if kind == "gnm":
            if a.m is None or a.seed is None:
                raise UsageError("gnm needs --m and --seed")
            g = graph.gnm(a.n, a.m, a.seed, sigma=a.sigma)
        else:
            g = graph.generate(kind, arg, sigma=a.sigma)
    graphio.write_graph(g, a.out)
    return 0


def cmd_solve_max(a):
    g = graphio.parse_graph(a.graph)
    f0 = None
    if a.f0 and a.f0 != "ones":
        with open(a.f0, encoding="utf-8") as fh:
            f0 = _floats(fh.read())
    cfg = SolverConfig(eps=a.eps, max_iter=a.max_iter, f0=f0, record_trace=bool(a.trace))
    pair, trace = solve_max(g, a.p, cfg)
    if a.trace:
        _emit(["k,lower,upper,rel_gap"] + [f"{k},{fmt(l)},{fmt(u)},{fmt(r)}" for k, l, u, r in trace.rows()], a.trace)
    if a.f_out:
        _emit([fmt(x) for x in pair.f], a.f_out)
    print(f"lambda {fmt(pair.lam)}")
    print(f"residual {fmt(pair.residual)}")
    return 0


def cmd_verify(a):
    g = graphio.parse_graph(a.graph)
    if a.f.size != g.n:
        raise UsageError(f"--f has {a.f.size} values, graph has {g.n} vertices")
    print(f"residual {fmt(verify_eigenpair(g, a.p, a.lam, a.f))}")
    return 0


def cmd_find_all(a):
    g = graphio.parse_graph(a.graph)
    res = multistart.find_eigenpairs(g, a.p, a.starts, a.seed, a.newton_tol, a.dedupe_tol)
    lines = ["lambda,residual," + ",".join(f"f_{i + 1}" for i in range(g.n))]
    for e in res.pairs:
        lines.append(",".join([fmt(e.lam), fmt(e.residual)] + [fmt(x) for x in e.f]))
    lines.append(f"# found {len(res)} distinct eigenpairs from {res.starts_used} starts "
                 f"({res.converged_count} converged)")
    _emit(lines, a.out)
    return 0


def cmd_tensor_check(a):
    g = graphio.parse_graph(a.graph)
    dev_op, dev_naive = tensor.compare_paths(g, a.p, a.trials, a.seed)
    print(f"max_rel_dev_tensor_vs_operator {fmt(dev_op)}")
    print(f"max_rel_dev_tensor_vs_naive {'n/a' if dev_naive is None else fmt(dev_naive)}")
    return 0


def cmd_criterion(a):
    g = graphio.parse_graph(a.g)
    gp = graphio.parse_graph(a.gprime)
    rep = criterion.criterion_sweep(g, gp, a.p_grid)
    _emit(rep.csv_lines(), a.out)
    return EXIT_NOT_SUBGRAPH if rep.verdict == "NotSubgraph" else 0


def cmd_sweep_p(a):
    g = graphio.parse_graph(a.graph)
    lines = ["p,lambda,lambda_over_2p" if a.scaled else "p,lambda"]
    for p in a.p_grid:
        lam = criterion.lambda_max_signless(g, p)
        row = f"{fmt(p)},{fmt(lam)}"
        lines.append(row + f",{fmt(lam / 2.0 ** p)}" if a.scaled else row)
    _emit(lines, a.out)
    return 0


def cmd_bench(a):
    recs = bench.run_bench(a.n, a.edges, a.p, a.seed, eps=a.eps, jobs=a.jobs, repeats=a.repeats)
    lines = [bench.HEADER] + [r.csv() for r in recs]
    if a.jobs > 1:
        lines.append(f"# timing: concurrent ({a.jobs} workers)")
    _emit(lines, a.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="plap", description="Eigenpairs of graph p-Laplacians.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", help="write a generated graph")
    s.add_argument("--type", required=True,
                   choices=["path", "cycle", "complete", "empty", "star", "hypercube", "gnm", "join"])
    s.add_argument("--n", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--sigma", type=_sigma, default=-1)
    s.add_argument("--left")
    s.add_argument("--right")
    s.add_argument("--out", required=True)
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("solve-max", help="largest eigenpair of the signless p-Laplacian")
    s.add_argument("--graph", required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--eps", type=float, default=1e-10)
    s.add_argument("--max-iter", type=int, default=100_000)
    s.add_argument("--f0", default="ones")
    s.add_argument("--trace")
    s.add_argument("--f-out")
    s.set_defaults(fn=cmd_solve_max)

    s = sub.add_parser("verify", help="eigen-residual of a candidate pair")
    s.add_argument("--graph", required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--lambda", dest="lam", type=float, required=True)
    s.add_argument("--f", type=_floats, required=True)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("find-all", help="multistart Newton eigenpairs for even p")
    s.add_argument("--graph", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--starts", type=int, default=2000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--newton-tol", type=float, default=1e-10)
    s.add_argument("--dedupe-tol", type=float, default=1e-6)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_find_all)

    s = sub.add_parser("tensor-check", help="compare tensor and operator contractions")
    s.add_argument("--graph", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_tensor_check)

    s = sub.add_parser("criterion", help="p-sweep non-containment test of G' in G")
    s.add_argument("--g", required=True)
    s.add_argument("--gprime", required=True)
    s.add_argument("--p-grid", type=_grid, default=criterion.parse_grid(criterion.DEFAULT_GRID))
    s.add_argument("--out")
    s.set_defaults(fn=cmd_criterion)

    s = sub.add_parser("sweep-p", help="largest eigenvalue over a grid of p")
    s.add_argument("--graph", required=True)
    s.add_argument("--p-grid", type=_grid, required=True)
    s.add_argument("--scaled", action="store_true")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_sweep_p)

    s = sub.add_parser("bench", help="solver timing over random graphs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--edges", type=_edges, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--eps", type=float, default=1e-10)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--repeats", type=int, default=3)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.fn(a)
    except UsageError as exc:
        print(f"plap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PLapError as exc:
        print(f"plap: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"plap: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
