"""Command-line entry point: ``totaldom <subcommand> ...``.

Exit codes: 0 success, 1 domain error (infeasible instance, size cap hit),
2 usage or input error (bad flags, malformed graph file).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .bounds import diagnostics
from .construction import construct, theorem3_bound
from .domination import (
    CapExceededError,
    DominationInstance,
    InfeasibleError,
    evaluate,
    exact_gamma,
    greedy_heuristic,
)
from .experiments import run_bad_vertex_experiment, run_construction_sweep, run_threshold_experiment
from .graph import GraphError, diameter, format_edge_list, girth, load_graph
from .random_graph import GnpSpec, bollobas_p, compare_thresholds, sample_gnp, threshold_p

log = logging.getLogger("totaldom")


def _num(x: float):
    """JSON-safe number: infinities become None."""
    return None if x in (float("inf"), float("-inf")) else x


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()


def _parse_set(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return [int(v) for v in json.loads(text)]
    return [int(v) for v in text.replace(",", " ").split()]


def cmd_gen(args) -> int:
    g = sample_gnp(GnpSpec(args.n, args.p, args.seed))
    _emit(format_edge_list(g), args.out)
    return 0


def cmd_stats(args) -> int:
    g = load_graph(args.graph)
    degs = g.degrees()
    stats = {
        "n": g.n,
        "m": g.m,
        "min_degree": min(degs) if degs else None,
        "max_degree": max(degs) if degs else None,
        "girth": _num(girth(g)),
        "diameter": _num(diameter(g)) if g.n else None,
    }
    _emit(_dump(stats), args.out)
    return 0


def cmd_check(args) -> int:
    g = load_graph(args.graph)
    S = _parse_set(Path(args.set_file).read_text() if args.set_file else args.set)
    result = evaluate(DominationInstance(g, args.k, args.r), S)
    _emit(_dump(result.as_dict()), args.out)
    return 0


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    inst = DominationInstance(g, args.k, args.r)
    result = greedy_heuristic(inst) if args.greedy else exact_gamma(inst, args.cap)
    if args.format == "csv":
        text = _csv([{"k": args.k, "r": args.r, "size": result.size,
                      "witness": " ".join(map(str, result.witness))}])
    else:
        text = _dump({"k": args.k, "r": args.r, "method": "greedy" if args.greedy else "exact",
                      "gamma": result.size, "witness": list(result.witness), "valid": result.valid})
    _emit(text, args.out)
    return 0


def cmd_construct(args) -> int:
    g = load_graph(args.graph)
    tr = construct(g, args.k, args.r, args.seed, mode=args.mode, d=args.d)
    if args.format == "csv":
        text = _csv([tr.csv_row()])
    else:
        body = tr.as_dict()
        body["theorem3_bound"] = theorem3_bound(g.n, tr.d, args.k, args.r)
        text = _dump(body)
    _emit(text, args.out)
    return 0


def cmd_bounds(args) -> int:
    rows = []
    for n in args.n:
        for k in args.k:
            for r in args.r:
                row = diagnostics(n, k, r, args.p, args.c2).as_dict()
                row["threshold_clamped"] = threshold_p(n, k, args.c2).clamped
                if args.d is not None:
                    row["theorem3_bound"] = theorem3_bound(n, args.d, k, r)
                    bb = bollobas_p(n, args.c, args.d)
                    row["bollobas_p"] = bb.p
                    row["bollobas_diameter_probability"] = bb.diameter_probability
                    cmp_ = compare_thresholds(n, args.d, args.c, args.eps)
                    row["weak_below_diameter"] = cmp_.weak_below_diameter
                    row["degree_condition"] = cmp_.degree_condition
                rows.append(row)
    _emit("".join(json.dumps(row, sort_keys=True) + "\n" for row in rows), args.out)
    if args.csv:
        Path(args.csv).write_text(_csv(rows))
    return 0


def cmd_experiment(args) -> int:
    if args.kind == "threshold":
        rep = run_threshold_experiment(
            args.n, args.k, args.r, args.trials, args.seed,
            p_multiplier=args.multiplier, c2=args.c2, certify=not args.no_certify,
            enum_cap=args.enum_cap, workers=args.threads,
        )
    elif args.kind == "bad-vertex":
        rep = run_bad_vertex_experiment(
            args.n, args.k, args.r, args.trials, args.seed,
            p_multiplier=args.multiplier, c2=args.c2, p=args.p, workers=args.threads,
        )
    else:
        if not args.graph:
            raise _UsageError("experiment construction needs --graph")
        g = load_graph(args.graph)
        rep = run_construction_sweep(
            g, args.k, args.r, args.trials, args.seed, d=args.d, name=args.graph, workers=args.threads,
        )
    log.info("%s experiment finished in %.2fs", rep.kind, rep.runtime_seconds)
    if args.format == "csv":
        _emit(rep.to_csv(), args.out)
    else:
        _emit(rep.to_json(include_trials=not args.summary_only), args.out)
    if args.csv:
        Path(args.csv).write_text(rep.to_csv())
    return 0


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="totaldom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_arg(p, positional=False):
        help_ = "edge-list file or fixture (petersen, heawood, mcgee, tutte-coxeter, k<n>, c<n>, p<n>)"
        if positional:
            p.add_argument("graph", help=help_)
        else:
            p.add_argument("--graph", required=True, help=help_)

    def out_arg(p):
        p.add_argument("--out", help="write primary output here instead of stdout")

    p = sub.add_parser("gen", help="sample G(n,p) to an edge-list file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    out_arg(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="degrees, girth and diameter")
    graph_arg(p, positional=True)
    out_arg(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("check", help="validate a candidate set")
    graph_arg(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--set", help="vertex ids, comma/space separated or a JSON list")
    group.add_argument("--set-file", help="file holding the vertex ids")
    out_arg(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="minimum total (k,r)-dominating set")
    graph_arg(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--cap", type=int, help="largest set size to search (default n)")
    p.add_argument("--greedy", action="store_true", help="greedy upper bound instead of exact search")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    out_arg(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("construct", help="randomized construction for large-girth graphs")
    graph_arg(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=("literal", "economical"), default="literal")
    p.add_argument("--d", type=int, help="override the minimum degree used for p")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    out_arg(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="thresholds, Janson diagnostics and failure bounds")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--k", type=int, nargs="+", required=True)
    p.add_argument("--r", type=int, nargs="+", default=[1])
    p.add_argument("--p", type=float, help="edge probability (default: the threshold)")
    p.add_argument("--c2", type=float, default=1.01, help="k=2 threshold constant (> 1)")
    p.add_argument("--d", type=int, help="degree / diameter parameter for the large-girth bound and diameter threshold")
    p.add_argument("--c", type=float, default=1.0, help="diameter-threshold constant")
    p.add_argument("--eps", type=float, default=0.4)
    p.add_argument("--csv", help="also write the grid as CSV here")
    out_arg(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", help="Monte Carlo experiments")
    p.add_argument("kind", choices=("threshold", "bad-vertex", "construction"))
    p.add_argument("--seed", type=int, required=True, help="master seed (required)")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, default=200, help="trials, or seeds for construction")
    p.add_argument("--multiplier", type=float, default=1.0, help="p as a multiple of the threshold")
    p.add_argument("--p", type=float, help="explicit edge probability (bad-vertex only)")
    p.add_argument("--c2", type=float, default=1.01)
    p.add_argument("--graph", help="fixture or edge-list file (construction only)")
    p.add_argument("--d", type=int)
    p.add_argument("--enum-cap", type=int, default=10**6)
    p.add_argument("--no-certify", action="store_true", help="skip the r-subset enumeration")
    p.add_argument("--threads", type=int, default=1, help="parallel workers; output does not depend on it")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--summary-only", action="store_true", help="omit per-trial records from JSON")
    p.add_argument("--csv", help="also write per-trial CSV here")
    out_arg(p)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.command == "experiment" and args.kind != "construction" and args.n is None:
        parser.error("experiment threshold/bad-vertex needs --n")
    try:
        return args.func(args)
    except (InfeasibleError, CapExceededError) as exc:
        print(f"totaldom: {exc}", file=sys.stderr)
        return 1
    except (GraphError, _UsageError, ValueError, OSError) as exc:
        print(f"totaldom: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
