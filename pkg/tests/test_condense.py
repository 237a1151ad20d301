"""Heuristic condensing: greedy ball cover, Hart-style CNN, MSS, RSS.

All four must output a consistent set on arbitrary inputs; the geometric
extremes (aligned opposite rows, two dominating outliers) pin down exact
greedy sizes.
"""

import numpy as np
import pytest

from wnncondense import (
    Dataset,
    consistency_check,
    enemy_distances,
    gen_bc_friendly,
    gen_two_lines,
    greedy_wnn,
    hart_cnn,
    mss,
    rss,
)
from tests.conftest import random_dataset

ALL_METHODS = [
    ("greedy", lambda ds: greedy_wnn(ds)[0]),
    ("hart", lambda ds: hart_cnn(ds, seed=3)),
    ("mss", mss),
    ("rss", rss),
]


class TestGreedy:
    def test_aligned_rows_need_every_point(self):
        # unit enemy radii, open balls hold only their centers
        ds = gen_two_lines(4)
        cset, trace = greedy_wnn(ds)
        assert len(cset.indices) == 8
        assert set(cset.indices) == set(range(8))
        assert all(cset.weights[i] == 1.0 for i in cset.indices)
        assert sum(trace.newly_covered) == 8

    def test_two_outliers_suffice(self):
        ds = gen_bc_friendly(5)
        cset, trace = greedy_wnn(ds)
        # the two appended outliers cover their whole classes
        assert set(cset.indices) == {9, 10}
        assert trace.newly_covered == (6, 5)

    def test_weights_equal_enemy_distance(self, rng):
        ds = random_dataset(rng, n=40)
        cset, _ = greedy_wnn(ds)
        radii = enemy_distances(ds)
        for i in cset.indices:
            assert cset.weights[i] == radii[i]

    def test_coverage_counts_never_increase(self, rng):
        for _ in range(20):
            ds = random_dataset(rng)
            _, trace = greedy_wnn(ds)
            newly = trace.newly_covered
            assert sum(newly) == ds.n
            assert all(a >= b for a, b in zip(newly, newly[1:]))

    def test_dense_and_lazy_paths_agree(self, rng):
        for _ in range(30):
            ds = random_dataset(rng)
            dense_c, dense_t = greedy_wnn(ds)
            lazy_c, lazy_t = greedy_wnn(ds, matrix_threshold=0)
            assert dense_c.indices == lazy_c.indices
            assert dense_t.steps == lazy_t.steps

    def test_single_class_collapses_to_one(self):
        ds = Dataset(np.arange(10, dtype=float).reshape(5, 2), np.zeros(5, dtype=np.int64))
        cset, trace = greedy_wnn(ds)
        assert len(cset.indices) == 1
        assert trace.newly_covered == (5,)


class TestSweepBaselines:
    def test_two_lines_sizes(self):
        ds = gen_two_lines(4)
        assert len(mss(ds).indices) == 8
        assert len(rss(ds).indices) == 8

    def test_single_class(self):
        ds = Dataset(np.arange(10, dtype=float).reshape(5, 2), np.zeros(5, dtype=np.int64))
        for name, method in ALL_METHODS:
            assert len(method(ds).indices) == 1, name

    def test_unit_weights(self, rng):
        ds = random_dataset(rng, n=30)
        for method in (lambda d: hart_cnn(d, seed=0), mss, rss):
            c = method(ds)
            assert all(c.weights[i] == 1.0 for i in c.indices)


class TestHart:
    def test_seed_determinism(self, rng):
        ds = random_dataset(rng, n=80)
        a = hart_cnn(ds, seed=11)
        b = hart_cnn(ds, seed=11)
        assert a.indices == b.indices

    def test_seeds_explore_different_orders(self, rng):
        ds = random_dataset(rng, n=120, dim=4)
        picks = {hart_cnn(ds, seed=s).indices for s in range(8)}
        assert len(picks) > 1


@pytest.mark.parametrize("name,method", ALL_METHODS, ids=[m[0] for m in ALL_METHODS])
def test_output_always_consistent(name, method, rng):
    # the load-bearing postcondition, on 100 random datasets
    for _ in range(100):
        ds = random_dataset(rng, n_classes=int(rng.integers(2, 4)))
        cset = method(ds)
        assert consistency_check(ds, cset).consistent
