"""Evaluation harness: per-method reports, sweeps, and report files."""

import json

import numpy as np
import pytest

from wnncondense import (
    classify_batch,
    WeightedCondensedSet,
    evaluate,
    gen_circle,
    run_sweep,
    split,
    SplitSpec,
)
from wnncondense.evaluate import (
    METHODS,
    canonical_method,
    write_report_csv,
    write_report_json,
)

EXPECTED_HEADER = "rep,seed,method,train_size,test_size,size,ratio,consistent,test_error,status,wall_time_s"


class TestEvaluate:
    def test_uncondensed_baseline(self):
        train, test = split(gen_circle(100, seed=0), SplitSpec(seed=0))
        rep = evaluate(train, test, "none")
        assert rep.ratio == 1.0
        assert rep.size == train.n
        assert rep.consistent
        assert rep.status == "ok"
        full = WeightedCondensedSet(train, tuple(range(train.n)), {i: 1.0 for i in range(train.n)})
        want = float((classify_batch(test.coords, full) != test.labels).mean())
        assert rep.test_error == want

    def test_greedy_compresses(self):
        train, test = split(gen_circle(200, seed=1), SplitSpec(seed=1))
        rep = evaluate(train, test, "greedy_wnn")
        assert rep.ratio < 0.25
        assert rep.consistent
        assert rep.wall_time_s > 0.0

    def test_budget_exhaustion_reported_not_raised(self):
        train, test = split(gen_circle(200, seed=0), SplitSpec(seed=0))
        rep = evaluate(train, test, "exact_nn", node_budget=2)
        assert rep.status == "unknown"
        assert rep.consistent

    def test_unknown_method_rejected(self):
        train, test = split(gen_circle(60, seed=0), SplitSpec(seed=0))
        with pytest.raises(ValueError):
            evaluate(train, test, "kmeans")


class TestCanonicalMethod:
    def test_dash_normalization(self):
        assert canonical_method("exact-nn") == "exact_nn"
        assert canonical_method("greedy_wnn") == "greedy_wnn"
        assert "none" in METHODS

    def test_unknown(self):
        with pytest.raises(ValueError):
            canonical_method("svm")


class TestSweep:
    def test_row_grid_and_order(self):
        ds = gen_circle(80, seed=0)
        rows = run_sweep(ds, ["mss", "greedy_wnn", "none"], reps=4, seed=10)
        assert len(rows) == 12
        keys = [(r.seed, r.report.method) for r in rows]
        assert keys == sorted(keys)
        assert [r.seed for r in rows] == [10, 10, 10, 11, 11, 11, 12, 12, 12, 13, 13, 13]

    def test_same_split_across_methods_within_rep(self):
        ds = gen_circle(80, seed=0)
        rows = run_sweep(ds, ["mss", "none"], reps=3, seed=0)
        by_rep = {}
        for r in rows:
            by_rep.setdefault(r.rep, set()).add((r.train_size, r.test_size))
        assert all(len(v) == 1 for v in by_rep.values())

    def test_workers_do_not_change_results(self):
        ds = gen_circle(120, seed=2)
        methods = ["greedy_wnn", "mss", "rss", "hart_cnn"]
        a = run_sweep(ds, methods, reps=5, seed=3, workers=1)
        b = run_sweep(ds, methods, reps=5, seed=3, workers=4)
        strip = lambda rows: [
            (r.rep, r.seed, r.train_size, r.test_size,
             r.report.method, r.report.size, r.report.ratio,
             r.report.consistent, r.report.test_error, r.report.status)
            for r in rows
        ]
        assert strip(a) == strip(b)


class TestReportFiles:
    def test_csv_bytes_deterministic(self, tmp_path):
        ds = gen_circle(80, seed=1)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_report_csv(run_sweep(ds, ["greedy_wnn", "none"], reps=3, seed=0), p1)
        write_report_csv(run_sweep(ds, ["greedy_wnn", "none"], reps=3, seed=0), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_csv_shape(self, tmp_path):
        ds = gen_circle(60, seed=1)
        p = tmp_path / "r.csv"
        write_report_csv(run_sweep(ds, ["none"], reps=2, seed=0), p)
        lines = p.read_text().splitlines()
        assert lines[0] == EXPECTED_HEADER
        assert len(lines) == 3
        assert all(line.endswith(",0.000000") for line in lines[1:])  # timings off

    def test_timings_flag_exposes_wall_time(self, tmp_path):
        ds = gen_circle(60, seed=1)
        rows = run_sweep(ds, ["greedy_wnn"], reps=1, seed=0)
        p = tmp_path / "t.csv"
        write_report_csv(rows, p, timings=True)
        cell = p.read_text().splitlines()[1].split(",")[-1]
        assert float(cell) > 0.0

    def test_json_mirror(self, tmp_path):
        ds = gen_circle(60, seed=1)
        rows = run_sweep(ds, ["none", "mss"], reps=2, seed=4)
        p = tmp_path / "r.json"
        write_report_json(rows, p)
        data = json.loads(p.read_text())
        assert len(data) == 4
        assert data[0]["method"] <= data[1]["method"]
        assert all(set(d) == set(EXPECTED_HEADER.split(",")) for d in data)
        assert all(d["wall_time_s"] == 0.0 for d in data)
