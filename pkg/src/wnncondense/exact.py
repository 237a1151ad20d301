"""Exact minimum condensing by branch and bound.

Two solvers, both deterministic given (dataset, node_budget), both
intended for small instances (a few hundred points):

* exact_wnn_condense finds a minimum weighted-consistent subset by solving
  minimum set cover over enemy balls: covering every point with an open
  ball B(x, enemy_distance(x)) and weighting each chosen x by its enemy
  distance yields a consistent weighted classifier, so the smallest cover
  is the optimum of that formulation.

* exact_nn_condense finds a minimum consistent subset for the unweighted
  rule. Feasibility of a subset T is the strict condition: every point
  outside T has a same-label point of T strictly closer than every
  opposite-label point of T. That predicate is exactly feasibility of the
  integer program built by build_nn_ip, which is also materialized here
  for inspection and LP export.

Exhausting the node budget is not an error: the solver returns a
distinguished "unknown" result carrying its best incumbent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .classifier import WeightedCondensedSet, consistency_check
from .condense import mss, rss
from .core import Dataset, WeightFn, enemy_distances

DEFAULT_NODE_BUDGET = 10_000_000

# Rows examined by the scan kernels' greedy disjoint lower bound.
_LB_CAP = 64


@dataclass(frozen=True)
class ExactResult:
    """Solver outcome: status "optimal" or "unknown" (budget exhausted),
    the best condensed set found, and the node count explored."""

    status: str
    condensed: WeightedCondensedSet
    nodes: int


class _BudgetExhausted(Exception):
    pass


# ---------------------------------------------------------------------------
# Weighted rule: minimum set cover over enemy balls.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverInstance:
    """Set-cover view of weighted condensing: universe = all indices,
    sets[x] = indices strictly inside the open enemy ball of x. Every
    member of sets[x] shares x's label, and x covers itself."""

    universe: tuple[int, ...]
    sets: tuple[frozenset[int], ...]


def build_wnn_cover(ds: Dataset) -> CoverInstance:
    radii = enemy_distances(ds)
    D = K.dist_matrix(ds.coords, ds.coords, ds.metric.code)
    sets = tuple(
        frozenset(int(j) for j in np.flatnonzero(D[i] < radii[i])) for i in range(ds.n)
    )
    return CoverInstance(universe=tuple(range(ds.n)), sets=sets)


def _cover_masks(cover: CoverInstance) -> list[int]:
    masks = []
    for s in cover.sets:
        m = 0
        for j in s:
            m |= 1 << j
        masks.append(m)
    return masks


def _greedy_cover_masks(masks: list[int], full: int) -> list[int]:
    unc = full
    picks = []
    while unc:
        best, bestc = -1, 0
        for i, m in enumerate(masks):
            c = (m & unc).bit_count()
            if c > bestc:
                best, bestc = i, c
        picks.append(best)
        unc &= ~masks[best]
    return picks


def _min_cover(masks: list[int], n: int, node_budget: int) -> tuple[str, list[int], int]:
    """Minimum set cover by branch and bound over python int bitmasks.
    Branches on the uncovered element with the fewest alive covering sets;
    children try each covering set, excluding the ones already tried."""
    full = (1 << n) - 1
    coverers = [0] * n  # per element, bitmask over set indices containing it
    for i, m in enumerate(masks):
        rest = m
        while rest:
            j = (rest & -rest).bit_length() - 1
            coverers[j] |= 1 << i
            rest &= rest - 1
    incumbent = _greedy_cover_masks(masks, full)
    best = {"picks": incumbent, "size": len(incumbent)}
    nodes = 0

    def rec(covered: int, chosen: list[int], excluded: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise _BudgetExhausted
        unc = full & ~covered
        if not unc:
            if len(chosen) < best["size"]:
                best["picks"] = list(chosen)
                best["size"] = len(chosen)
            return
        # Pick the most constrained uncovered element; compute the greedy
        # disjoint-element lower bound along the way.
        elems = []
        rest = unc
        while rest:
            e = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            alive = coverers[e] & ~excluded
            if alive == 0:
                return  # infeasible branch
            elems.append((alive.bit_count(), e, alive))
        elems.sort()
        used_sets = 0
        lb_extra = 0
        for _, _, alive in elems:
            if not (alive & used_sets):
                lb_extra += 1
                used_sets |= alive
        if len(chosen) + lb_extra >= best["size"]:
            return
        _, e, alive = elems[0]
        cands = []
        rest = alive
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            cands.append(((masks[i] & unc).bit_count(), -i))
        cands.sort(reverse=True)  # most new coverage first, ties to lowest index
        tried = 0
        for _, neg in cands:
            i = -neg
            if len(chosen) + 1 >= best["size"]:
                break
            chosen.append(i)
            rec(covered | masks[i], chosen, excluded | tried)
            chosen.pop()
            tried |= 1 << i
    try:
        rec(0, [], 0)
        status = "optimal"
    except _BudgetExhausted:
        status = "unknown"
    return status, best["picks"], nodes


def exact_wnn_condense(
    ds: Dataset, node_budget: int = DEFAULT_NODE_BUDGET
) -> ExactResult:
    """Minimum weighted-consistent subset (enemy-distance weights) via
    set cover. Indices are reported in ascending order."""
    radii = enemy_distances(ds)
    if ds.n_classes == 1:
        cset = WeightedCondensedSet(ds, (0,), WeightFn({0: float(radii[0])}))
        return ExactResult("optimal", cset, 0)
    cover = build_wnn_cover(ds)
    masks = _cover_masks(cover)
    status, picks, nodes = _min_cover(masks, ds.n, node_budget)
    picks = sorted(picks)
    cset = WeightedCondensedSet(ds, picks, WeightFn({i: float(radii[i]) for i in picks}))
    report = consistency_check(ds, cset)
    if not report.consistent:
        raise AssertionError("minimum cover produced an inconsistent classifier")
    return ExactResult(status, cset, nodes)


# ---------------------------------------------------------------------------
# Unweighted rule: IP view and feasibility branch and bound.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IPInstance:
    """0/1 program for minimum consistent subsets.

    Variables v[0..n-1] select points. For every ordered pair (x, x') with
    differing labels there is a constraint v[x'] <= sum of v over
    support(x, x') = {x} + same-label points strictly closer to x than x'.
    One more constraint forces a non-empty selection. Minimizing sum(v)
    over feasible assignments gives the minimum consistent subset.
    """

    n: int
    constraints: tuple[tuple[int, int, frozenset[int]], ...]  # (x, x', support)


def build_nn_ip(ds: Dataset) -> IPInstance:
    D = K.dist_matrix(ds.coords, ds.coords, ds.metric.code)
    cons = []
    for x in range(ds.n):
        same = ds.labels == ds.labels[x]
        for xp in range(ds.n):
            if ds.labels[xp] == ds.labels[x]:
                continue
            support = frozenset(
                int(j) for j in np.flatnonzero(same & (D[x] < D[x, xp]))
            ) | {x}
            cons.append((x, xp, frozenset(support)))
    return IPInstance(n=ds.n, constraints=tuple(cons))


def export_lp(ip: IPInstance) -> str:
    """Render the IP in LP text format (binary variables v0..v{n-1})."""
    lines = ["Minimize", " obj: " + " + ".join(f"v{i}" for i in range(ip.n)), "Subject To"]
    for k, (_, xp, support) in enumerate(ip.constraints):
        terms = " + ".join(f"v{j}" for j in sorted(support))
        lines.append(f" c{k}: {terms} - v{xp} >= 0")
    lines.append(" nonempty: " + " + ".join(f"v{i}" for i in range(ip.n)) + " >= 1")
    lines.append("Binary")
    lines.append(" " + " ".join(f"v{i}" for i in range(ip.n)))
    lines.append("End")
    return "\n".join(lines) + "\n"


def ip_feasible(ip: IPInstance, selected) -> bool:
    """Check a selection against every constraint of the IP."""
    sel = set(int(i) for i in selected)
    if not sel:
        return False
    for _, xp, support in ip.constraints:
        if xp in sel and not (sel & support):
            return False
    return True


def strict_feasible(D: np.ndarray, labels: np.ndarray, mask: np.ndarray) -> bool:
    """Feasibility predicate of the IP in geometric form: every point
    outside the selection has a selected same-label point strictly closer
    than every selected opposite-label point."""
    sel = np.flatnonzero(mask)
    if sel.size == 0:
        return False
    sub = D[:, sel]
    opp = labels[sel][None, :] != labels[:, None]
    min_opp = np.where(opp, sub, np.inf).min(axis=1)
    min_same = np.where(opp, np.inf, sub).min(axis=1)
    return bool(np.all(mask | (min_same < min_opp)))


def _refine_by_removal(D, labels, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    improved = True
    while improved:
        improved = False
        for i in np.flatnonzero(mask):
            mask[i] = False
            if strict_feasible(D, labels, mask):
                improved = True
            else:
                mask[i] = True
    return mask


def exact_nn_condense(
    ds: Dataset, node_budget: int = DEFAULT_NODE_BUDGET
) -> ExactResult:
    """Minimum consistent subset for the unweighted rule (unit weights),
    by branch and bound on the strict feasibility predicate. Indices are
    reported in ascending order."""
    if ds.n_classes == 1:
        cset = WeightedCondensedSet(ds, (0,), WeightFn({0: 1.0}))
        return ExactResult("optimal", cset, 0)
    n = ds.n
    labels = np.ascontiguousarray(ds.labels, dtype=np.int64)
    D = K.dist_matrix(ds.coords, ds.coords, ds.metric.code)

    # Incumbent: the smaller of the two sweep baselines (both strictly
    # feasible by construction), then shrink by removal passes.
    seed_sets = [mss(ds).indices, rss(ds).indices]
    seed_sets.sort(key=len)
    mask0 = np.zeros(n, dtype=bool)
    mask0[list(seed_sets[0])] = True
    mask0 = _refine_by_removal(D, labels, mask0)
    best = {"mask": mask0, "size": int(mask0.sum())}

    in_mask = np.zeros(n, dtype=np.uint8)
    out_mask = np.zeros(n, dtype=np.uint8)
    nodes = 0

    def add_point(c, mo, ms):
        mo = mo.copy()
        ms = ms.copy()
        row = D[c]
        enem = labels != labels[c]
        np.minimum(mo, row, out=mo, where=enem)
        np.minimum(ms, row, out=ms, where=~enem)
        return mo, ms

    def rec(in_count, mo, ms):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise _BudgetExhausted
        nviol, lb, xstar, _ = K.nn_scan(
            D, labels, in_mask, out_mask, mo, ms, in_count, _LB_CAP
        )
        if nviol == 0:
            if in_count < best["size"]:
                best["mask"] = in_mask.astype(bool)
                best["size"] = in_count
            return
        if lb >= best["size"]:
            return
        cands, use = K.nn_candidates(D, labels, in_mask, out_mask, mo, ms, xstar)
        order = np.lexsort((cands, -use))
        touched = []
        for c in cands[order]:
            c = int(c)
            if in_count + 1 >= best["size"]:
                break
            in_mask[c] = 1
            mo2, ms2 = add_point(c, mo, ms)
            rec(in_count + 1, mo2, ms2)
            in_mask[c] = 0
            out_mask[c] = 1
            touched.append(c)
        for c in touched:
            out_mask[c] = 0

    # Any feasible selection holds a point of every class; root the search
    # on the scarcest class (ties to the lowest label), largest enemy
    # distance first.
    classes, counts = np.unique(labels, return_counts=True)
    root_class = int(classes[np.lexsort((classes, counts))[0]])
    roots = np.flatnonzero(labels == root_class)
    renemy = enemy_distances(ds)
    roots = roots[np.lexsort((roots, -renemy[roots]))]
    mo0 = np.full(n, np.inf)
    ms0 = np.full(n, np.inf)
    status = "optimal"
    try:
        touched = []
        for c in roots:
            c = int(c)
            if 1 >= best["size"]:
                break
            in_mask[c] = 1
            mo, ms = add_point(c, mo0, ms0)
            rec(1, mo, ms)
            in_mask[c] = 0
            out_mask[c] = 1
            touched.append(c)
        for c in touched:
            out_mask[c] = 0
    except _BudgetExhausted:
        status = "unknown"

    picks = sorted(int(i) for i in np.flatnonzero(best["mask"]))
    cset = WeightedCondensedSet(ds, picks, WeightFn({i: 1.0 for i in picks}))
    report = consistency_check(ds, cset)
    if not report.consistent:
        raise AssertionError("exact solver produced an inconsistent classifier")
    return ExactResult(status, cset, nodes)
