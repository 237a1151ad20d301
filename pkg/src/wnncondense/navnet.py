"""Navigating nets for accelerated weighted-NN queries.

The structure normalizes the point set so the smallest inter-point
distance is 1, then stacks nested levels: level 0 holds every point, and
each level i >= 1 keeps a greedy subset of level i-1 in which accepted
points are pairwise more than 2^i apart while covering level i-1 within
2^i. The top level t (smallest power with 2^t covering the diameter)
holds a single root whenever t >= 1. Each node records the heaviest point
in its subtree. Queries descend the levels keeping only nodes within
2*2^i/eps of the query and evaluate both each kept node's own point and
its heaviest descendant; the returned candidate's weighted distance is
within (1+8*eps) of optimal. wnn_query_scaled rescales eps so callers get
a plain (1+eps) guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .core import MetricKind, as_coords


@dataclass(frozen=True)
class NetHierarchy:
    """Nested level sets as point-index arrays (ascending), levels[0]
    holding every point, plus the top level index and the normalization
    scale (the raw minimum inter-point distance)."""

    levels: tuple[np.ndarray, ...]
    top_level: int
    scale: float


@dataclass(frozen=True)
class QueryResult:
    """index/wdist of the returned point; nodes_visited counts tree nodes
    whose own point was distance-checked during the descent."""

    index: int
    wdist: float
    nodes_visited: int


class NavTree:
    """A built navigating net over weighted points.

    children[i][k] lists positions (into levels[i-1]) of the k-th level-i
    node's children; every node's own point reappears as one of its
    children one level down. heaviest[i][k] is the point index of the
    maximum-weight point in that subtree.
    """

    __slots__ = ("points", "weights", "metric", "hierarchy", "parent_pos", "children", "heaviest")

    def __init__(self, points, weights, metric, hierarchy, parent_pos, children, heaviest):
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "hierarchy", hierarchy)
        object.__setattr__(self, "parent_pos", parent_pos)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "heaviest", heaviest)

    def __setattr__(self, name, value):
        raise AttributeError("NavTree is immutable")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def __repr__(self) -> str:
        return f"NavTree(n={self.n}, top_level={self.hierarchy.top_level})"


def _check_weights(weights, n) -> np.ndarray:
    w = np.ascontiguousarray(weights, dtype=np.float64)
    if w.shape != (n,):
        raise ValueError("weights must align with the points")
    if np.isnan(w).any() or (w <= 0.0).any():
        raise ValueError("weights must be positive (+inf allowed)")
    return w


def build_navigating_net(points, weights, metric: MetricKind = MetricKind.EUCLIDEAN) -> NavTree:
    """Build the hierarchy, parent/child links, and heaviest annotations.

    Points must be pairwise distinct: a zero minimum distance cannot be
    normalized to 1.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError("points must be a non-empty (n, d) array")
    if not np.isfinite(points).all():
        raise ValueError("point coordinates must be finite")
    if not isinstance(metric, MetricKind):
        metric = MetricKind.parse(metric)
    n = points.shape[0]
    w = _check_weights(weights, n)
    points.setflags(write=False)
    w.setflags(write=False)
    if n == 1:
        hierarchy = NetHierarchy((np.array([0], dtype=np.int64),), 0, 1.0)
        return NavTree(points, w, metric, hierarchy, (), (None,), (np.array([0], dtype=np.int64),))
    D = K.dist_matrix(points, points, metric.code)
    off = D.copy()
    np.fill_diagonal(off, np.inf)
    scale = float(off.min())
    if scale == 0.0:
        raise ValueError("points must be pairwise distinct")
    Dn = D / scale
    diam = float(Dn.max())
    t = 0
    while 2.0**t < diam:
        t += 1
    levels = [np.arange(n, dtype=np.int64)]
    for i in range(1, t + 1):
        r = 2.0**i
        acc: list[int] = []
        for idx in levels[i - 1]:
            idx = int(idx)
            if not acc or not (Dn[idx, acc] <= r).any():
                acc.append(idx)
        levels.append(np.array(acc, dtype=np.int64))
    parent_pos = []
    children: list = [None]  # level 0 nodes have no children
    for i in range(t):
        r = 2.0 ** (i + 1)
        cur, nxt = levels[i], levels[i + 1]
        pp = np.empty(len(cur), dtype=np.int64)
        kids: list[list[int]] = [[] for _ in range(len(nxt))]
        for k, idx in enumerate(cur):
            p = int(np.flatnonzero(Dn[int(idx), nxt] <= r)[0])
            pp[k] = p
            kids[p].append(k)
        parent_pos.append(pp)
        children.append([np.array(ks, dtype=np.int64) for ks in kids])
    heaviest = [levels[0].copy()]
    for i in range(1, t + 1):
        h = np.empty(len(levels[i]), dtype=np.int64)
        for k in range(len(levels[i])):
            cand = heaviest[i - 1][children[i][k]]
            h[k] = int(cand[int(np.argmax(w[cand]))])
        heaviest.append(h)
    hierarchy = NetHierarchy(tuple(levels), t, scale)
    return NavTree(points, w, metric, hierarchy, tuple(parent_pos), tuple(children), tuple(heaviest))


def wnn_query(tree: NavTree, q, eps: float) -> QueryResult:
    """Approximate weighted-NN query: the result's weighted distance is at
    most (1+8*eps) times the true minimum of distance(q, p)/weight(p)."""
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    q = as_coords(q)
    pts = tree.points
    if q.shape[0] != pts.shape[1]:
        raise ValueError("query dimension does not match the tree")
    w = tree.weights
    code = tree.metric.code
    levels = tree.hierarchy.levels
    t = tree.hierarchy.top_level
    scale = tree.hierarchy.scale
    best_wd = math.inf
    best_idx = -1

    def consider(idxs, dists=None):
        nonlocal best_wd, best_idx
        if dists is None:
            dists = K.dist_matrix(q[None, :], pts[idxs], code)[0]
        wd = dists / w[idxs]
        k = int(np.argmin(wd))
        if wd[k] < best_wd:
            best_wd = float(wd[k])
            best_idx = int(idxs[k])

    top = levels[t]
    top_d = K.dist_matrix(q[None, :], pts[top], code)[0]
    visited = len(top)
    consider(top, top_d)
    consider(tree.heaviest[t])
    L = np.arange(len(top))
    for i in range(t - 1, -1, -1):
        if L.size == 0:
            break
        thr = (2.0 * 2.0**i / eps) * scale
        childpos = np.concatenate([tree.children[i + 1][k] for k in L])
        cidx = levels[i][childpos]
        dists = K.dist_matrix(q[None, :], pts[cidx], code)[0]
        visited += len(cidx)
        keep = dists <= thr
        L = childpos[keep]
        if L.size:
            consider(cidx[keep], dists[keep])
            consider(tree.heaviest[i][L])
    return QueryResult(index=best_idx, wdist=best_wd, nodes_visited=visited)


def wnn_query_scaled(tree: NavTree, q, eps: float) -> QueryResult:
    """Like wnn_query but with a plain (1+eps) guarantee (internally runs
    the descent at eps/8)."""
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    return wnn_query(tree, q, eps / 8.0)


def brute_force_wnn(points, weights, q, metric: MetricKind = MetricKind.EUCLIDEAN) -> QueryResult:
    """Exact weighted-NN by full scan (the oracle the net is measured
    against). Ties go to the lowest index."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError("points must be a non-empty (n, d) array")
    if not isinstance(metric, MetricKind):
        metric = MetricKind.parse(metric)
    w = _check_weights(weights, points.shape[0])
    q = as_coords(q)
    pos = int(K.wnn_argmin(q[None, :], points, w, metric.code)[0])
    d = float(K.dist_matrix(q[None, :], points[pos : pos + 1], metric.code)[0, 0])
    wd = 0.0 if math.isinf(w[pos]) else d / float(w[pos])
    return QueryResult(index=pos, wdist=wd, nodes_visited=points.shape[0])


def format_hierarchy(tree: NavTree) -> str:
    """Human-readable dump of levels, parents, and heaviest annotations."""
    h = tree.hierarchy
    lines = [f"navigating net: n={tree.n} top_level={h.top_level} scale={h.scale!r}"]
    for i in range(h.top_level, -1, -1):
        lvl = h.levels[i]
        parts = []
        for k, idx in enumerate(lvl):
            tag = f"{int(idx)}"
            if i < h.top_level:
                tag += f"->p{int(h.levels[i + 1][tree.parent_pos[i][k]])}"
            tag += f"(h={int(tree.heaviest[i][k])})"
            parts.append(tag)
        lines.append(f"level {i} (2^{i}): " + " ".join(parts))
    return "\n".join(lines) + "\n"
