"""Command-line interface: ``seedcluster {cluster,eval,seed-gen,synth-bench,stats}``.

Exit codes: 0 success, 2 usage error, 3 input or parse error, 4 infeasible
seed specification. Set ``SEEDCLUSTER_LOG`` (e.g. ``DEBUG``) for logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import fileio
from .driver import ALPHA_UPDATES, MODES, SolveOptions, cluster
from .exceptions import InfeasibleSpecError, InputError
from .metrics import evaluate
from .objective import SeedSpec
from .synthetic import generate_planted, make_seed

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_INFEASIBLE = 4

log = logging.getLogger("seedcluster")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _graph_args(p, required=True):
    p.add_argument("--graph", required=required, help="edge list file ('u v [w]' per line)")
    p.add_argument("--index-base", type=int, choices=(0, 1), default=0)
    p.add_argument("--relabel", action="store_true", help="renumber sparse node ids")


def _solve_args(p):
    p.add_argument("--seeds", required=True, help="seed file ('node [strict] [penalty]' per line)")
    p.add_argument("--epsilon", type=float, help="locality parameter (not needed with --mode mqi)")
    p.add_argument("--penalty", type=float, default=0.0, help="soft penalty for non-strict seeds")
    p.add_argument("--strict-all", action="store_true", help="require every seed in the output")
    p.add_argument("--mode", choices=MODES, default="flowseed")
    p.add_argument("--alpha-update", choices=ALPHA_UPDATES)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seedcluster", description="Flow-based local clustering around a seed set.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="grow a seed set into a cluster")
    _graph_args(p)
    _solve_args(p)
    p.add_argument("--output", "-o", default="-", help="result file (default stdout)")
    p.add_argument("--members", help="also write member ids, one per line")
    p.add_argument("--target", help="ground-truth node list to evaluate against")
    p.add_argument("--timing", action="store_true", help="include wall time in the result")

    p = sub.add_parser("stats", help="solver telemetry for one clustering run")
    _graph_args(p)
    _solve_args(p)

    p = sub.add_parser("eval", help="precision/recall/F1 of a result against a target")
    _graph_args(p, required=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--result", help="result file written by 'cluster'")
    src.add_argument("--set", dest="node_set", help="node list file")
    p.add_argument("--target", required=True, help="ground-truth node list")

    p = sub.add_parser("seed-gen", help="sample starters from a target and grow them by one hop")
    _graph_args(p)
    p.add_argument("--target", required=True)
    p.add_argument("--fraction", type=float, default=0.05)
    p.add_argument("--rng", type=int, default=0)
    p.add_argument("--penalty", type=float, help="soft penalty column for non-starter seeds")
    p.add_argument("--output", "-o", default="-")

    p = sub.add_parser("synth-bench", help="planted-partition recovery benchmark")
    p.add_argument("--blocks", default="100,100", help="comma-separated block sizes; block 0 is the target")
    p.add_argument("--p-in", type=float, default=0.3)
    p.add_argument("--p-out", type=float, default=0.02)
    p.add_argument("--fraction", type=float, default=0.05)
    p.add_argument("--rng", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=2.0)
    p.add_argument("--penalty", type=float, default=1.0, help="soft penalty in the strict+soft method")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true", help="print rows as JSON instead of a table")
    return parser


def _load_problem(args):
    g = fileio.load_graph(args.graph, index_base=args.index_base, relabel=args.relabel)
    if args.mode == "mqi":
        eps = math.inf
    elif args.epsilon is None:
        raise _UsageError("--epsilon is required unless --mode mqi")
    else:
        eps = args.epsilon
    if args.penalty < 0:
        raise InputError("--penalty must be nonnegative")
    spec = fileio.load_seeds(args.seeds, g, eps, default_penalty=args.penalty, strict_all=args.strict_all)
    opts = SolveOptions(mode=args.mode, alpha_update=args.alpha_update)
    return g, spec, opts


def _open_out(path):
    return sys.stdout if path == "-" else open(path, "w")


def cmd_cluster(args) -> int:
    g, spec, opts = _load_problem(args)
    result = cluster(g, spec, opts)
    report = None
    if args.target:
        report = evaluate(result.best_set, fileio.load_node_list(args.target, g), g, result.spec)
    out = _open_out(args.output)
    try:
        fileio.write_result(result, g, out, report=report, timing=args.timing, members_path=args.members)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_stats(args) -> int:
    g, spec, opts = _load_problem(args)
    result = cluster(g, spec, opts)
    spec = result.spec
    vol_r = g.volume(spec.seeds)
    cut_r = g.cut(spec.seeds)
    eps = spec.epsilon
    bound = vol_r * (1 + 2 / eps) + cut_r
    tight = vol_r * (1 + 1 / eps) + cut_r
    rows = []
    for i, r in enumerate(result.reports):
        rows.append(
            f"{i:>4} {r.alpha:>12.6g} {len(r.minimizer):>7} {r.rounds:>6} {r.explored_edges:>9} "
            f"{r.peak_local_volume:>12.6g} {r.pushes:>9} {r.relabels:>9} {r.global_relabels:>7}"
        )
    print(f"seeds={len(spec.seeds)} strict={len(spec.strict)} vol(R)={vol_r:g} cut(R)={cut_r:g} epsilon={eps:g}")
    print(f"volume bound (1+2/eps)={bound:g}  (1+1/eps)={tight:g}")
    print(f"{'iter':>4} {'alpha':>12} {'|S|':>7} {'rounds':>6} {'edges':>9} {'local_vol':>12} "
          f"{'pushes':>9} {'relabels':>9} {'global':>7}")
    for row in rows:
        print(row)
    peak = result.peak_local_volume
    print(f"peak local volume {peak:g} ({'within' if peak <= bound + 1e-9 else 'EXCEEDS'} bound"
          f"{'' if peak <= tight + 1e-9 else '; above the 1/eps constant'})")
    print(f"result size={result.size} pi={result.pi_score:.12g} conductance={result.conductance:.12g} "
          f"time={result.wall_time:.3f}s")
    return 0


def cmd_eval(args) -> int:
    if args.graph:
        g = fileio.load_graph(args.graph, index_base=args.index_base, relabel=args.relabel)
        target = fileio.load_node_list(args.target, g)
        if args.result:
            members = [g.internal_id(m) for m in fileio.read_result(args.result)["members"]]
        else:
            members = fileio.load_node_list(args.node_set, g)
        report = evaluate(members, target, g)
    else:
        target = _raw_ids(args.target)
        members = fileio.read_result(args.result)["members"] if args.result else _raw_ids(args.node_set)
        report = evaluate(members, target)
    doc = {k: (v if not isinstance(v, float) or math.isfinite(v) else None) for k, v in report.as_dict().items()}
    print(json.dumps(doc, indent=2))
    return 0


def _raw_ids(path):
    return frozenset(
        fileio._parse_int(toks[0], path, lineno) for lineno, toks in fileio._content_lines(path)
    )


def cmd_seed_gen(args) -> int:
    g = fileio.load_graph(args.graph, index_base=args.index_base, relabel=args.relabel)
    target = fileio.load_node_list(args.target, g)
    starters, seeds = make_seed(g, target, args.fraction, args.rng)
    if args.output == "-":
        ids = g.node_ids.tolist()
        for v in sorted(seeds):
            line = f"{ids[v]} {1 if v in starters else 0}"
            if args.penalty is not None and v not in starters:
                line += f" {args.penalty!r}"
            print(line)
    else:
        fileio.write_seeds(args.output, g, seeds, starters, args.penalty)
    return 0


BENCH_METHODS = ("no-penalty", "strict", "strict+soft", "simplelocal")


def bench_trial(blocks, p_in, p_out, fraction, rng, epsilon, penalty):
    """One synthetic instance; returns a row per method."""
    g, target = generate_planted(blocks, p_in, p_out, rng)
    starters, seeds = make_seed(g, target, fraction, rng)
    soft = {r: penalty for r in seeds - starters}
    specs = {
        "no-penalty": (SeedSpec(seeds, epsilon=epsilon), SolveOptions()),
        "strict": (SeedSpec(seeds, starters, epsilon=epsilon), SolveOptions()),
        "strict+soft": (SeedSpec(seeds, starters, soft, epsilon), SolveOptions()),
        "simplelocal": (SeedSpec(seeds, epsilon=epsilon), SolveOptions(mode="simplelocal")),
    }
    rows = {}
    for name, (spec, opts) in specs.items():
        t0 = time.perf_counter()
        res = cluster(g, spec, opts)
        elapsed = time.perf_counter() - t0
        rep = evaluate(res.best_set, target, g)
        rows[name] = dict(size=rep.set_size, conductance=rep.conductance, runtime=elapsed,
                          precision=rep.precision, recall=rep.recall, f1=rep.f1)
    return rows


def cmd_synth_bench(args) -> int:
    try:
        blocks = [int(b) for b in args.blocks.split(",")]
    except ValueError:
        raise _UsageError(f"--blocks must be comma-separated integers, got {args.blocks!r}") from None
    if args.trials < 1 or args.jobs < 1:
        raise _UsageError("--trials and --jobs must be positive")
    params = [(blocks, args.p_in, args.p_out, args.fraction, args.rng + k, args.epsilon, args.penalty)
              for k in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            trials = list(pool.map(bench_trial, *zip(*params)))
    else:
        trials = [bench_trial(*p) for p in params]
    cols = ("size", "conductance", "runtime", "precision", "recall", "f1")
    summary = {m: {c: sum(t[m][c] for t in trials) / len(trials) for c in cols} for m in BENCH_METHODS}
    if args.json:
        print(json.dumps({"trials": trials, "mean": summary}, indent=2))
        return 0
    print(f"{'method':<12} {'size':>7} {'phi':>8} {'runtime':>8} {'prec.':>6} {'recall':>6} {'F1':>6}")
    for m in BENCH_METHODS:
        s = summary[m]
        print(f"{m:<12} {s['size']:>7.1f} {s['conductance']:>8.4f} {s['runtime']:>8.3f} "
              f"{s['precision']:>6.3f} {s['recall']:>6.3f} {s['f1']:>6.3f}")
    return 0


COMMANDS = {
    "cluster": cmd_cluster,
    "stats": cmd_stats,
    "eval": cmd_eval,
    "seed-gen": cmd_seed_gen,
    "synth-bench": cmd_synth_bench,
}


def run(argv=None) -> int:
    level = os.environ.get("SEEDCLUSTER_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleSpecError as exc:
        print(f"seedcluster: infeasible seed specification: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InputError, OSError) as exc:
        print(f"seedcluster: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
