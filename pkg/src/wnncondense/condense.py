"""Condensing heuristics.

greedy_wnn implements weighted condensing by greedy ball cover: each point
owns the open ball around itself reaching to its nearest enemy, and the
algorithm repeatedly takes the point whose ball covers the most
still-uncovered points, weighting it by its enemy distance. The classical
unit-weight baselines (Hart's CNN, MSS, RSS) are included for comparison.
All four produce consistent condensed sets, asserted before returning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .classifier import WeightedCondensedSet, consistency_check
from .core import Dataset, WeightFn, enemy_distances

# Above this size the boolean coverage matrix is not materialized; ball
# counts are recomputed each greedy round instead. Both paths pick the
# identical sequence.
MATRIX_THRESHOLD = 20000


@dataclass(frozen=True)
class GreedyTrace:
    """Per-round greedy record: (chosen index, its weight, newly covered)."""

    steps: tuple[tuple[int, float, int], ...]

    @property
    def picked(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.steps)

    @property
    def newly_covered(self) -> tuple[int, ...]:
        return tuple(s[2] for s in self.steps)


def _finish(ds, picks, weights_by_index) -> WeightedCondensedSet:
    cset = WeightedCondensedSet(ds, picks, WeightFn(weights_by_index))
    report = consistency_check(ds, cset)
    if not report.consistent:
        raise AssertionError(
            f"condensed set failed the consistency postcondition: {report.violations[:5]}"
        )
    return cset


def greedy_wnn(
    ds: Dataset, *, matrix_threshold: int = MATRIX_THRESHOLD
) -> tuple[WeightedCondensedSet, GreedyTrace]:
    """Greedy weighted condensing. Ties on coverage counts go to the
    lowest index. Single-class datasets condense to one point whose +inf
    enemy distance makes its ball cover everything."""
    radii = enemy_distances(ds)
    code = ds.metric.code
    n = ds.n
    if n <= matrix_threshold:
        D = K.dist_matrix(ds.coords, ds.coords, code)
        cover = np.ascontiguousarray(D < radii[:, None], dtype=np.uint8)
        picks, newly = K.greedy_cover_dense(cover)
        picks = [int(p) for p in picks]
        newly = [int(c) for c in newly]
    else:
        unc = np.ones(n, dtype=np.uint8)
        picks, newly = [], []
        remaining = n
        while remaining > 0:
            counts = K.ball_counts(ds.coords, radii, unc, code)
            p = int(np.argmax(counts))
            c = int(counts[p])
            if c == 0:
                raise AssertionError("greedy cover stalled; enemy balls must cover the sample")
            members = K.ball_members(ds.coords, p, float(radii[p]), code)
            unc[members.view(bool)] = 0
            picks.append(p)
            newly.append(c)
            remaining -= c
    weights = {p: float(radii[p]) for p in picks}
    cset = _finish(ds, picks, weights)
    trace = GreedyTrace(tuple((p, float(radii[p]), c) for p, c in zip(picks, newly)))
    return cset, trace


def hart_cnn(ds: Dataset, seed: int = 0) -> WeightedCondensedSet:
    """Hart's condensed nearest neighbor with unit weights.

    Scans the sample in a seeded random order, adding any point the
    current condensed set misclassifies, and repeats until a full pass
    adds nothing. The first scanned point is always added.
    """
    rng = np.random.default_rng(seed)
    order = rng.permutation(ds.n)
    code = ds.metric.code
    buf = np.empty_like(ds.coords)
    lab: list[int] = []
    selected: list[int] = []
    ones = np.ones(ds.n, dtype=np.float64)
    changed = True
    while changed:
        changed = False
        for i in order:
            i = int(i)
            if not selected:
                buf[0] = ds.coords[i]
                lab.append(int(ds.labels[i]))
                selected.append(i)
                changed = True
                continue
            m = len(selected)
            pos = K.wnn_argmin(ds.coords[i : i + 1], buf[:m], ones[:m], code)[0]
            if lab[pos] != ds.labels[i]:
                buf[m] = ds.coords[i]
                lab.append(int(ds.labels[i]))
                selected.append(i)
                changed = True
    return _finish(ds, selected, {i: 1.0 for i in selected})


def _sweep_select(ds: Dataset, order: np.ndarray) -> list[int]:
    # Shared MSS/RSS core: walk `order`, keep any point not yet covered,
    # and mark same-label points strictly inside their own enemy radius
    # of the kept point as covered.
    radii = enemy_distances(ds)
    code = ds.metric.code
    covered = np.zeros(ds.n, dtype=bool)
    selected: list[int] = []
    for i in order:
        i = int(i)
        if covered[i]:
            continue
        selected.append(i)
        row = K.dist_matrix(ds.coords[i : i + 1], ds.coords, code)[0]
        covered |= (ds.labels == ds.labels[i]) & (row < radii)
    return selected


def mss(ds: Dataset) -> WeightedCondensedSet:
    """Modified selective subset baseline: ascending enemy-distance sweep,
    unit weights. Ties on the sort key go to the lowest index."""
    radii = enemy_distances(ds)
    order = np.lexsort((np.arange(ds.n), radii))
    selected = _sweep_select(ds, order)
    return _finish(ds, selected, {i: 1.0 for i in selected})


def rss(ds: Dataset) -> WeightedCondensedSet:
    """Relaxed selective subset baseline: descending enemy-distance sweep,
    unit weights. Ties on the sort key go to the lowest index."""
    radii = enemy_distances(ds)
    order = np.lexsort((np.arange(ds.n), -radii))
    selected = _sweep_select(ds, order)
    return _finish(ds, selected, {i: 1.0 for i in selected})
