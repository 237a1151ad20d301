"""Command line interface.

Subcommands: gen (write a dataset CSV), condense (condense a CSV and
write the condensed CSV plus a JSON summary on stdout), eval (sweep
methods over seeded splits into a report CSV/JSON), searchbench (compare
navigating-net queries against brute force).

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 bad data,
4 node budget exhausted, 5 assertion failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from .classifier import consistency_check
from .core import MetricKind
from .datasets import (
    GeneratorSpec,
    generate,
    load_condensed_csv,
    load_csv,
    save_condensed_csv,
    save_csv,
)
from .evaluate import (
    DEFAULT_NODE_BUDGET,
    _run_method,
    canonical_method,
    run_sweep,
    write_report_csv,
    write_report_json,
)
from .navnet import brute_force_wnn, build_navigating_net, wnn_query

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3
EXIT_BUDGET = 4
EXIT_ASSERT = 5


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _metric(args) -> MetricKind:
    try:
        return MetricKind.parse(args.metric)
    except ValueError as e:
        raise _UsageError(str(e)) from None


def cmd_gen(args) -> int:
    try:
        spec = GeneratorSpec(
            family=args.family, gamma=args.gamma, n=args.n, seed=args.seed, spread=args.spread
        )
        ds = generate(spec)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    save_csv(ds, args.out)
    return EXIT_OK


def cmd_condense(args) -> int:
    try:
        method = canonical_method(args.method)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    if args.node_budget < 1:
        raise _UsageError("--node-budget must be positive")
    ds = load_csv(args.input, metric=_metric(args))
    t0 = time.perf_counter()
    cset, status = _run_method(ds, method, args.seed, args.node_budget)
    wall = time.perf_counter() - t0
    save_condensed_csv(cset, args.out)
    summary = {
        "method": method,
        "input_size": ds.n,
        "size": len(cset),
        "ratio": len(cset) / ds.n,
        "consistent": bool(consistency_check(ds, cset).consistent),
        "status": status,
        "wall_time_s": wall,
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_BUDGET if status == "unknown" else EXIT_OK


def cmd_eval(args) -> int:
    methods = [m for m in (s.strip() for s in args.methods.split(",")) if m]
    if not methods:
        raise _UsageError("--methods must name at least one method")
    try:
        methods = [canonical_method(m) for m in methods]
    except ValueError as e:
        raise _UsageError(str(e)) from None
    if args.reps < 1:
        raise _UsageError("--reps must be at least 1")
    if args.workers < 1:
        raise _UsageError("--workers must be at least 1")
    if not 0.0 < args.train_fraction < 1.0:
        raise _UsageError("--split must lie in (0, 1)")
    if args.node_budget < 1:
        raise _UsageError("--node-budget must be positive")
    ds = load_csv(args.input, metric=_metric(args))
    rows = run_sweep(
        ds,
        methods,
        args.reps,
        train_fraction=args.train_fraction,
        seed=args.seed,
        workers=args.workers,
        node_budget=args.node_budget,
    )
    write_report_csv(rows, args.out, timings=args.timings)
    if args.json_out:
        write_report_json(rows, args.json_out, timings=args.timings)
    if any(r.report.status == "unknown" for r in rows):
        return EXIT_BUDGET
    return EXIT_OK


def _load_weighted_points(path, metric):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        header = next(csv.reader(fh), None)
    if header is None:
        raise ValueError("line 1: empty file, expected a header row")
    if "weight" in [h.strip() for h in header]:
        ds, cset = load_condensed_csv(path, metric=metric)
        return ds.coords, cset._warr
    ds = load_csv(path, metric=metric)
    return ds.coords, np.ones(ds.n, dtype=np.float64)


def cmd_searchbench(args) -> int:
    if not 0.0 < args.eps < 1.0:
        raise _UsageError("--eps must lie in (0, 1)")
    if args.queries < 1:
        raise _UsageError("--queries must be at least 1")
    metric = _metric(args)
    points, weights = _load_weighted_points(args.input, metric)
    tree = build_navigating_net(points, weights, metric)
    rng = np.random.default_rng(args.seed)
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    flat = hi == lo
    lo = np.where(flat, lo - 0.5, lo)
    hi = np.where(flat, hi + 0.5, hi)
    queries = rng.uniform(lo, hi, size=(args.queries, points.shape[1]))
    bound = 1.0 + 8.0 * args.eps
    max_ratio = 0.0
    ratio_sum = 0.0
    visited_sum = 0
    visited_max = 0
    for k in range(args.queries):
        res = wnn_query(tree, queries[k], args.eps)
        opt = brute_force_wnn(points, weights, queries[k], metric)
        if opt.wdist == 0.0:
            ratio = 1.0 if res.wdist == 0.0 else math.inf
        else:
            ratio = res.wdist / opt.wdist
        max_ratio = max(max_ratio, ratio)
        ratio_sum += ratio
        visited_sum += res.nodes_visited
        visited_max = max(visited_max, res.nodes_visited)
    summary = {
        "n": int(points.shape[0]),
        "queries": args.queries,
        "eps": args.eps,
        "bound": bound,
        "max_ratio": max_ratio,
        "mean_ratio": ratio_sum / args.queries,
        "mean_nodes_visited": visited_sum / args.queries,
        "max_nodes_visited": visited_max,
        "top_level": tree.hierarchy.top_level,
    }
    print(json.dumps(summary, sort_keys=True))
    if max_ratio > bound * (1.0 + 1e-12):
        raise AssertionError(
            f"approximation bound violated: max ratio {max_ratio} exceeds {bound}"
        )
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(prog="wnncondense", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a dataset CSV")
    g.add_argument("--family", required=True, help="two-lines | bc-friendly | circle | blobs")
    g.add_argument("--gamma", type=int, help="size parameter for two-lines/bc-friendly")
    g.add_argument("--n", type=int, help="size for circle/blobs")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--spread", type=float, default=0.55, help="blobs mixture spread")
    g.add_argument("--out", required=True, help="output CSV path")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("condense", help="condense a dataset CSV")
    c.add_argument("--input", required=True)
    c.add_argument("--method", required=True, help="greedy-wnn | hart-cnn | mss | rss | exact-nn | exact-wnn | none")
    c.add_argument("--out", required=True, help="condensed CSV path")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    c.add_argument("--metric", default="euclidean")
    c.set_defaults(func=cmd_condense)

    e = sub.add_parser("eval", help="evaluate methods over seeded splits")
    e.add_argument("--input", required=True)
    e.add_argument("--methods", required=True, help="comma-separated method names")
    e.add_argument("--reps", type=int, default=1)
    e.add_argument("--split", type=float, default=0.7, dest="train_fraction")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True, help="report CSV path")
    e.add_argument("--json", dest="json_out", help="also write a JSON report here")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--timings", action="store_true", help="write real wall times (breaks byte determinism)")
    e.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    e.add_argument("--metric", default="euclidean")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("searchbench", help="navigating-net accuracy/visit benchmark")
    s.add_argument("--input", required=True, help="dataset CSV; a weight column is used if present")
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--queries", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--metric", default="euclidean")
    s.set_defaults(func=cmd_searchbench)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except AssertionError as e:
        print(f"assertion failed: {e}", file=sys.stderr)
        return EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
