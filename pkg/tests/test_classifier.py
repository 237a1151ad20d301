"""Weighted nearest-neighbor classification and the generalization bound.

The frozen bound literal was computed independently with mpmath at 50
digits: (2/90) * (10*ln(200) + ln(2000)) = 1.3463128027782767...
"""

import math

import numpy as np
import pytest

from wnncondense import (
    Dataset,
    WeightedCondensedSet,
    classify,
    classify_batch,
    consistency_check,
    gen_two_lines,
    generalization_bound,
)
from tests.conftest import random_dataset


def _two_point_set(p0, p1, w0, w1):
    ds = Dataset(np.array([p0, p1], dtype=float), np.array([0, 1]))
    return WeightedCondensedSet(ds, (0, 1), {0: w0, 1: w1})


class TestClassify:
    def test_unweighted_nearest(self):
        c = _two_point_set([0, 0], [10, 0], 1.0, 1.0)
        assert classify((1, 0), c) == 0

    def test_heavy_far_point_wins(self):
        # weighted distances 1 vs 0.2
        c = _two_point_set([0, 0], [3, 0], 1.0, 10.0)
        assert classify((1, 0), c) == 1

    def test_query_on_condensed_point(self):
        c = _two_point_set([0, 0], [3, 0], 1.0, 10.0)
        assert classify((0, 0), c) == 0
        assert classify((3, 0), c) == 1

    def test_batch_matches_scalar(self, rng):
        ds = random_dataset(rng, n=40, dim=3)
        sel = tuple(range(0, 40, 3))
        c = WeightedCondensedSet(ds, sel, {i: 1.0 + (i % 4) for i in sel})
        qs = rng.normal(size=(100, 3))
        batch = classify_batch(qs, c)
        for q, want in zip(qs, batch):
            assert classify(q, c) == want

    def test_unit_weights_agree_with_plain_nn(self, rng):
        ds = random_dataset(rng, n=60, dim=2)
        c = WeightedCondensedSet(ds, tuple(range(60)), {i: 1.0 for i in range(60)})
        qs = rng.normal(size=(1000, 2))
        got = classify_batch(qs, c)
        # independent plain 1-NN oracle, ties to the lowest index
        diffs = qs[:, None, :] - ds.coords[None, :, :]
        D = np.sqrt((diffs * diffs).sum(axis=2))
        want = ds.labels[np.argmin(D, axis=1)]
        assert np.array_equal(got, want)

    @pytest.mark.parametrize("scale", [2.0, 0.25, 3.7])
    def test_uniform_weight_scaling_invariance(self, scale, rng):
        ds = random_dataset(rng, n=30, dim=2)
        sel = tuple(range(0, 30, 2))
        base = {i: 1.0 + (i % 5) * 0.5 for i in sel}
        qs = rng.normal(size=(500, 2))
        a = classify_batch(qs, WeightedCondensedSet(ds, sel, base))
        b = classify_batch(qs, WeightedCondensedSet(ds, sel, {i: w * scale for i, w in base.items()}))
        assert np.array_equal(a, b)


class TestConsistency:
    def test_full_sample_is_consistent(self, rng):
        ds = random_dataset(rng, n=25)
        c = WeightedCondensedSet(ds, tuple(range(25)), {i: 1.0 for i in range(25)})
        rep = consistency_check(ds, c)
        assert rep.consistent
        assert rep.violations == ()

    def test_two_lines_facing_pair(self):
        ds = gen_two_lines(4)
        c = WeightedCondensedSet(ds, (0, 4), {0: 1.0, 4: 1.0})
        assert consistency_check(ds, c).consistent

    def test_single_side_violates_all_enemies(self):
        ds = gen_two_lines(4)
        c = WeightedCondensedSet(ds, (0,), {0: 1.0})
        rep = consistency_check(ds, c)
        assert not rep.consistent
        assert [v[0] for v in rep.violations] == [4, 5, 6, 7]
        assert all(v[1] == 0 for v in rep.violations)


class TestGeneralizationBound:
    def test_frozen_value(self):
        got = generalization_bound(100, 10, 0.05)
        assert got == pytest.approx(1.3463128027782767, rel=1e-9)

    def test_large_sample_scale(self):
        assert generalization_bound(10**6, 1, 0.5) < 1e-4
        assert generalization_bound(10**6, 1, 0.5, permutation_invariant=True) < 1e-4

    def test_invariant_no_worse_from_three(self):
        for n in (20, 100, 1000, 10**5):
            for m in range(3, min(n, 50)):
                for delta in (0.01, 0.05, 0.5):
                    inv = generalization_bound(n, m, delta, permutation_invariant=True)
                    plain = generalization_bound(n, m, delta)
                    assert inv <= plain

    def test_monotone_in_condensed_size(self):
        vals = [generalization_bound(1000, m, 0.05) for m in range(1, 200)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            generalization_bound(10, 10, 0.05)
        with pytest.raises(ValueError):
            generalization_bound(10, 0, 0.05)
        with pytest.raises(ValueError):
            generalization_bound(10, 2, 0.0)
        with pytest.raises(ValueError):
            generalization_bound(10, 2, 1.0)


class TestCondensedSetValidation:
    def test_rejects_bad_selections(self):
        ds = gen_two_lines(2)
        with pytest.raises(ValueError):
            WeightedCondensedSet(ds, (), {})
        with pytest.raises(ValueError):
            WeightedCondensedSet(ds, (0, 0), {0: 1.0})
        with pytest.raises(ValueError):
            WeightedCondensedSet(ds, (99,), {99: 1.0})

    def test_weights_must_cover_selection_exactly(self):
        ds = gen_two_lines(2)
        with pytest.raises(ValueError):
            WeightedCondensedSet(ds, (0, 1), {0: 1.0})
        with pytest.raises(ValueError):
            WeightedCondensedSet(ds, (0,), {0: 1.0, 1: 1.0})
