"""Condenser evaluation harness.

evaluate() condenses a training set with a named method, replays the
training set for consistency, scores test error, and reports sizes.
run_sweep() repeats that over seeded splits and methods; rows come back
sorted by (seed, method) so output files are byte-stable regardless of
worker count. Wall-clock columns are zeroed unless timings are requested,
keeping report files deterministic.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .classifier import classify_batch, consistency_check
from .condense import greedy_wnn, hart_cnn, mss, rss
from .core import Dataset, WeightFn
from .classifier import WeightedCondensedSet
from .datasets import SplitSpec, split
from .exact import DEFAULT_NODE_BUDGET, exact_nn_condense, exact_wnn_condense

METHODS = ("exact_nn", "exact_wnn", "greedy_wnn", "hart_cnn", "mss", "none", "rss")


def canonical_method(name: str) -> str:
    m = str(name).strip().lower().replace("-", "_")
    if m not in METHODS:
        raise ValueError(f"unknown method {name!r}; expected one of {METHODS}")
    return m


@dataclass(frozen=True)
class CondenseReport:
    """One condensing run: method, condensed size, size/train ratio,
    training-set consistency, test error, wall time, and solver status
    ("ok", or "unknown" when an exact solve exhausted its node budget)."""

    method: str
    size: int
    ratio: float
    consistent: bool
    test_error: float
    wall_time_s: float
    status: str = "ok"


def _run_method(train: Dataset, method: str, seed: int, node_budget: int):
    if method == "greedy_wnn":
        return greedy_wnn(train)[0], "ok"
    if method == "hart_cnn":
        return hart_cnn(train, seed=seed), "ok"
    if method == "mss":
        return mss(train), "ok"
    if method == "rss":
        return rss(train), "ok"
    if method == "exact_nn":
        r = exact_nn_condense(train, node_budget=node_budget)
        return r.condensed, r.status if r.status == "unknown" else "ok"
    if method == "exact_wnn":
        r = exact_wnn_condense(train, node_budget=node_budget)
        return r.condensed, r.status if r.status == "unknown" else "ok"
    if method == "none":
        idx = tuple(range(train.n))
        return (
            WeightedCondensedSet(train, idx, WeightFn({i: 1.0 for i in idx})),
            "ok",
        )
    raise ValueError(f"unknown method {method!r}")


def evaluate(
    train: Dataset,
    test: Dataset,
    method: str,
    *,
    seed: int = 0,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CondenseReport:
    """Condense `train` with `method` and score it on `test`. Deterministic
    given (train, test, method, seed, node_budget)."""
    method = canonical_method(method)
    if train.dim != test.dim:
        raise ValueError("train and test dimensions differ")
    if test.n == 0:
        raise ValueError("test set must be non-empty")
    t0 = time.perf_counter()
    cset, status = _run_method(train, method, seed, node_budget)
    wall = time.perf_counter() - t0
    consistent = consistency_check(train, cset).consistent
    preds = classify_batch(test.coords, cset)
    err = float(np.mean(preds != test.labels))
    return CondenseReport(
        method=method,
        size=len(cset),
        ratio=len(cset) / train.n,
        consistent=consistent,
        test_error=err,
        wall_time_s=wall,
        status=status,
    )


@dataclass(frozen=True)
class SweepRow:
    rep: int
    seed: int
    train_size: int
    test_size: int
    report: CondenseReport


def run_sweep(
    ds: Dataset,
    methods,
    reps: int,
    *,
    train_fraction: float = 0.7,
    seed: int = 0,
    workers: int = 1,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[SweepRow]:
    """Evaluate every method on `reps` seeded splits (rep r uses seed
    seed+r for both the split and the method). Rows are sorted by
    (seed, method) and independent of worker count."""
    methods = [canonical_method(m) for m in methods]
    if len(set(methods)) != len(methods):
        raise ValueError("duplicate methods requested")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    jobs = []
    for rep in range(reps):
        rep_seed = seed + rep
        train, test = split(ds, SplitSpec(train_fraction=train_fraction, seed=rep_seed))
        for m in methods:
            jobs.append((rep, rep_seed, train, test, m))

    def run(job):
        rep, rep_seed, train, test, m = job
        rpt = evaluate(train, test, m, seed=rep_seed, node_budget=node_budget)
        return SweepRow(rep, rep_seed, train.n, test.n, rpt)

    if workers == 1:
        rows = [run(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, jobs))
    rows.sort(key=lambda r: (r.seed, r.report.method))
    return rows


_REPORT_FIELDS = (
    "rep",
    "seed",
    "method",
    "train_size",
    "test_size",
    "size",
    "ratio",
    "consistent",
    "test_error",
    "status",
    "wall_time_s",
)


def _row_cells(row: SweepRow, timings: bool) -> dict:
    r = row.report if timings else replace(row.report, wall_time_s=0.0)
    return {
        "rep": row.rep,
        "seed": row.seed,
        "method": r.method,
        "train_size": row.train_size,
        "test_size": row.test_size,
        "size": r.size,
        "ratio": "%.17g" % r.ratio,
        "consistent": "true" if r.consistent else "false",
        "test_error": "%.17g" % r.test_error,
        "status": r.status,
        "wall_time_s": "%.6f" % r.wall_time_s,
    }


def write_report_csv(rows, path, timings: bool = False) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(_REPORT_FIELDS)
        for row in rows:
            cells = _row_cells(row, timings)
            wr.writerow([cells[f] for f in _REPORT_FIELDS])


def write_report_json(rows, path, timings: bool = False) -> None:
    payload = []
    for row in rows:
        cells = _row_cells(row, timings)
        cells["ratio"] = float(cells["ratio"])
        cells["test_error"] = float(cells["test_error"])
        cells["consistent"] = cells["consistent"] == "true"
        cells["wall_time_s"] = float(cells["wall_time_s"])
        payload.append(cells)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
