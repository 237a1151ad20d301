"""Navigating-net construction invariants and query guarantees.

The small line instance (coordinates 0, 1, 2, 4) is fully hand-checked:
scale 1, diameter 4 so the top level is 2, and the greedy nets keep
{0, 4} then {0}. Heaviest-descendant annotations follow from the child
partitions derived the same way.
"""

import math

import numpy as np
import pytest

from wnncondense import (
    MetricKind,
    brute_force_wnn,
    build_navigating_net,
    distance,
    wnn_query,
    wnn_query_scaled,
)

LINE_PTS = np.array([[0.0], [1.0], [2.0], [4.0]])
LINE_W = np.array([1.0, 2.0, 1.0, 3.0])


def _norm_dists(tree):
    pts = tree.points
    diffs = pts[:, None, :] - pts[None, :, :]
    D = np.sqrt((diffs * diffs).sum(axis=2))
    return D / tree.hierarchy.scale


class TestBuildSmall:
    def test_line_levels(self):
        tree = build_navigating_net(LINE_PTS, LINE_W)
        h = tree.hierarchy
        assert h.scale == 1.0
        assert h.top_level == 2
        assert [list(lv) for lv in h.levels] == [[0, 1, 2, 3], [0, 3], [0]]

    def test_line_parents_and_children(self):
        tree = build_navigating_net(LINE_PTS, LINE_W)
        # level-0 nodes 0,1,2 hang off level-1 node 0; node 3 off node 1
        assert list(tree.parent_pos[0]) == [0, 0, 0, 1]
        assert list(tree.parent_pos[1]) == [0, 0]
        assert [list(k) for k in tree.children[1]] == [[0, 1, 2], [3]]
        assert [list(k) for k in tree.children[2]] == [[0, 1]]

    def test_line_heaviest(self):
        tree = build_navigating_net(LINE_PTS, LINE_W)
        assert [list(h) for h in tree.heaviest] == [[0, 1, 2, 3], [1, 3], [3]]

    def test_single_point(self):
        tree = build_navigating_net(np.array([[5.0, 5.0]]), np.array([2.0]))
        assert tree.hierarchy.top_level == 0
        r = wnn_query(tree, (0.0, 0.0), 0.5)
        assert r.index == 0
        assert r.wdist == distance((0, 0), (5, 5)) / 2.0

    def test_duplicate_points_rejected(self):
        pts = np.array([[1.0], [1.0], [2.0]])
        with pytest.raises(ValueError):
            build_navigating_net(pts, np.ones(3))

    def test_weight_validation(self):
        with pytest.raises(ValueError):
            build_navigating_net(LINE_PTS, np.array([1.0, 0.0, 1.0, 1.0]))
        with pytest.raises(ValueError):
            build_navigating_net(LINE_PTS, np.ones(3))


@pytest.fixture(scope="module")
def tree():
    rng = np.random.default_rng(42)
    pts = rng.random((500, 3))
    wts = rng.uniform(0.5, 2.0, size=500)
    return build_navigating_net(pts, wts)


@pytest.fixture(scope="module")
def setup():
    rng = np.random.default_rng(9)
    pts = rng.normal(size=(200, 2))
    wts = rng.uniform(0.5, 2.0, size=200)
    queries = rng.normal(size=(300, 2)) * 1.5
    return build_navigating_net(pts, wts), pts, wts, queries


class TestHierarchyInvariants:
    def test_base_level_holds_everything(self, tree):
        assert np.array_equal(tree.hierarchy.levels[0], np.arange(500))

    def test_nesting(self, tree):
        lv = tree.hierarchy.levels
        for i in range(1, len(lv)):
            assert set(lv[i]) <= set(lv[i - 1])

    def test_packing(self, tree):
        Dn = _norm_dists(tree)
        for i in range(1, len(tree.hierarchy.levels)):
            members = tree.hierarchy.levels[i]
            sub = Dn[np.ix_(members, members)]
            off = sub[~np.eye(len(members), dtype=bool)]
            assert np.all(off > 2.0**i)

    def test_covering(self, tree):
        Dn = _norm_dists(tree)
        lv = tree.hierarchy.levels
        for i in range(1, len(lv)):
            gap = Dn[np.ix_(lv[i - 1], lv[i])].min(axis=1)
            assert np.all(gap <= 2.0**i)

    def test_top_level_spans_diameter(self, tree):
        Dn = _norm_dists(tree)
        t = tree.hierarchy.top_level
        assert len(tree.hierarchy.levels[t]) == 1
        assert 2.0**t >= Dn.max()
        assert Dn[Dn > 0].min() == 1.0

    def test_parent_distance_bound(self, tree):
        Dn = _norm_dists(tree)
        lv = tree.hierarchy.levels
        for i, pp in enumerate(tree.parent_pos):
            child_idx = lv[i]
            parent_idx = lv[i + 1][pp]
            assert np.all(Dn[child_idx, parent_idx] <= 2.0 ** (i + 1))

    def test_heaviest_matches_recomputation(self, tree):
        lv = tree.hierarchy.levels
        w = tree.weights

        def subtree(i, k):
            if i == 0:
                return [int(lv[0][k])]
            out = []
            for ck in tree.children[i][k]:
                out.extend(subtree(i - 1, int(ck)))
            return out

        for i in range(len(lv)):
            for k in range(len(lv[i])):
                members = subtree(i, k)
                assert int(lv[i][k]) in members  # own point stays in subtree
                want = max(members, key=lambda j: (w[j], -j))
                got = int(tree.heaviest[i][k])
                assert w[got] == w[want]
                assert got in members
                assert w[got] >= w[int(lv[i][k])]


class TestQuery:
    @pytest.mark.parametrize("eps", [0.05, 0.3, 0.9])
    def test_approximation_guarantee(self, setup, eps):
        tree, pts, wts, queries = setup
        for q in queries:
            got = wnn_query(tree, q, eps)
            opt = brute_force_wnn(pts, wts, q)
            assert got.wdist <= (1.0 + 8.0 * eps) * opt.wdist
            assert got.wdist == distance(q, pts[got.index]) / wts[got.index]

    @pytest.mark.parametrize("eps", [0.4, 0.9])
    def test_scaled_wrapper_tightens_to_plain_factor(self, setup, eps):
        tree, pts, wts, queries = setup
        for q in queries:
            got = wnn_query_scaled(tree, q, eps)
            opt = brute_force_wnn(pts, wts, q)
            assert got.wdist <= (1.0 + eps) * opt.wdist

    def test_equal_weights_reduce_to_plain_ann(self, setup):
        tree, pts, _, queries = setup
        flat = build_navigating_net(pts, np.full(200, 1.5))
        for q in queries[:100]:
            got = wnn_query(flat, q, 0.1)
            diffs = pts - q
            true_nn = float(np.sqrt((diffs * diffs).sum(axis=1)).min())
            assert got.wdist * 1.5 <= (1.0 + 0.8) * true_nn

    def test_eps_domain(self, setup):
        tree = setup[0]
        for bad in (0.0, 1.0, -0.2, 8.0):
            with pytest.raises(ValueError):
                wnn_query(tree, (0.0, 0.0), bad)

    def test_manhattan_tree(self):
        rng = np.random.default_rng(3)
        pts = rng.normal(size=(60, 2))
        wts = rng.uniform(0.5, 2.0, size=60)
        tree = build_navigating_net(pts, wts, MetricKind.MANHATTAN)
        for q in rng.normal(size=(50, 2)):
            got = wnn_query(tree, q, 0.25)
            opt = brute_force_wnn(pts, wts, q, MetricKind.MANHATTAN)
            assert got.wdist <= 3.0 * opt.wdist


class TestBruteForce:
    def test_single_point(self):
        r = brute_force_wnn(np.array([[1.0, 1.0]]), np.array([3.0]), (0.0, 0.0))
        assert r.index == 0
        assert r.wdist == distance((0, 0), (1, 1)) / 3.0

    def test_zero_distance_beats_heavy(self):
        pts = np.array([[0.0, 0.0], [9.0, 0.0]])
        r = brute_force_wnn(pts, np.array([1.0, 1e300]), (0.0, 0.0))
        assert r.index == 0
        assert r.wdist == 0.0

    def test_agrees_with_reimplementation(self, rng):
        for _ in range(1000):
            n = int(rng.integers(1, 12))
            pts = rng.normal(size=(n, 2))
            wts = rng.uniform(0.25, 4.0, size=n)
            q = rng.normal(size=2)
            got = brute_force_wnn(pts, wts, q)
            best, best_i = math.inf, -1
            for i in range(n):
                wd = distance(q, pts[i]) / wts[i]
                if wd < best:
                    best, best_i = wd, i
            assert (got.index, got.wdist) == (best_i, best)
