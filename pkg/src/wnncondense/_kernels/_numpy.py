"""Numpy kernels: the pure-python twin of wnncondense._ckernels.

Every function here fixes the floating-point operation order (distances
accumulate dimension by dimension, divisions happen after the full
distance) to match the compiled loops bit for bit, so the two
implementations are interchangeable. Keep both in sync when editing.
"""

import numpy as np

# Sentinel lower bound meaning "this branch node is infeasible, prune it".
LB_PRUNE = 1 << 30

_CHUNK = 512


def _coerce_pts(A):
    A = np.ascontiguousarray(A, dtype=np.float64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d array of points")
    return A


def dist_matrix(A, B, metric):
    """Pairwise distances, shape (len(A), len(B)). metric: 0 euclidean,
    1 manhattan, 2 chebyshev."""
    A = _coerce_pts(A)
    B = _coerce_pts(B)
    if A.shape[1] != B.shape[1]:
        raise ValueError("point sets must share a dimension")
    d = A.shape[1]
    diff = A[:, 0][:, None] - B[:, 0][None, :]
    if metric == 0:
        acc = diff * diff
        for k in range(1, d):
            diff = A[:, k][:, None] - B[:, k][None, :]
            acc += diff * diff
        return np.sqrt(acc)
    if metric == 1:
        acc = np.abs(diff)
        for k in range(1, d):
            acc += np.abs(A[:, k][:, None] - B[:, k][None, :])
        return acc
    if metric == 2:
        acc = np.abs(diff)
        for k in range(1, d):
            np.maximum(acc, np.abs(A[:, k][:, None] - B[:, k][None, :]), out=acc)
        return acc
    raise ValueError(f"unknown metric code {metric}")


def enemy_dists(X, labels, metric):
    """Per point, min distance to a differently labeled point (+inf if none)."""
    X = _coerce_pts(X)
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    n = X.shape[0]
    out = np.empty(n, dtype=np.float64)
    for i0 in range(0, n, _CHUNK):
        i1 = min(i0 + _CHUNK, n)
        D = dist_matrix(X[i0:i1], X, metric)
        D[labels[i0:i1][:, None] == labels[None, :]] = np.inf
        out[i0:i1] = D.min(axis=1)
    return out


def wnn_argmin(Q, P, w, metric):
    """Index of the weighted-nearest point of P for each query: argmin of
    distance/weight, first minimum wins."""
    Q = _coerce_pts(Q)
    P = _coerce_pts(P)
    w = np.ascontiguousarray(w, dtype=np.float64)
    if P.shape[0] == 0:
        raise ValueError("need at least one candidate point")
    out = np.empty(Q.shape[0], dtype=np.int64)
    for i0 in range(0, Q.shape[0], _CHUNK):
        i1 = min(i0 + _CHUNK, Q.shape[0])
        WD = dist_matrix(Q[i0:i1], P, metric) / w[None, :]
        out[i0:i1] = np.argmin(WD, axis=1)
    return out


def greedy_cover_dense(cover):
    """Greedy set cover over a boolean membership matrix: repeatedly pick
    the row covering the most still-uncovered columns (ties to the lowest
    row index). Returns (picked rows, newly covered counts)."""
    cover = np.ascontiguousarray(cover, dtype=np.uint8)
    n, m = cover.shape
    if n != m:
        raise ValueError("cover matrix must be square")
    cov = cover.view(bool)
    unc = np.ones(n, dtype=bool)
    picks, newly = [], []
    while unc.any():
        counts = (cov & unc[None, :]).sum(axis=1)
        p = int(np.argmax(counts))
        c = int(counts[p])
        if c == 0:
            raise ValueError("cover matrix cannot cover all columns")
        picks.append(p)
        newly.append(c)
        unc &= ~cov[p]
    return np.asarray(picks, dtype=np.int64), np.asarray(newly, dtype=np.int64)


def ball_counts(X, radii, uncovered, metric):
    """counts[i] = number of still-uncovered j with d(X[i], X[j]) < radii[i]
    (open balls). The matrix-free twin of one greedy_cover_dense round."""
    X = _coerce_pts(X)
    radii = np.ascontiguousarray(radii, dtype=np.float64)
    unc = np.ascontiguousarray(uncovered, dtype=np.uint8).view(bool)
    n = X.shape[0]
    counts = np.empty(n, dtype=np.int64)
    for i0 in range(0, n, _CHUNK):
        i1 = min(i0 + _CHUNK, n)
        D = dist_matrix(X[i0:i1], X, metric)
        inside = D < radii[i0:i1][:, None]
        counts[i0:i1] = (inside & unc[None, :]).sum(axis=1)
    return counts


def ball_members(X, i, radius, metric):
    """Open-ball membership mask around point i (uint8 0/1)."""
    X = _coerce_pts(X)
    row = dist_matrix(X[i : i + 1], X, metric)[0]
    return (row < radius).view(np.uint8)


def nn_scan(D, labels, in_mask, out_mask, min_opp, min_same, in_count, lb_cap):
    """One branch-and-bound node scan for minimum consistent subsets.

    A point is violated when it is outside the selection, has a selected
    enemy, and its nearest selected same-label point is not strictly
    closer. Returns (violated count, lower bound, branch point, candidate
    count): the lower bound adds to in_count a greedy count of violated
    points with pairwise-disjoint candidate sets (examining at most lb_cap
    rows ordered by candidate count then index), the branch point is the
    violated point with the fewest candidates (ties to the lowest index).
    LB_PRUNE signals a violated point with no candidates at all.
    """
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    n = D.shape[0]
    free = in_mask == 0
    viol = np.flatnonzero(free & (min_opp < np.inf) & (min_same >= min_opp))
    if viol.size == 0:
        return 0, int(in_count), -1, 0
    avail = free & (out_mask == 0)
    candmat = (
        (labels[viol][:, None] == labels[None, :])
        & avail[None, :]
        & (D[viol] < min_opp[viol][:, None])
    )
    cnt = candmat.sum(axis=1)
    if not cnt.all():
        return int(viol.size), LB_PRUNE, -1, 0
    order = np.lexsort((viol, cnt))
    used = np.zeros(n, dtype=bool)
    extra = 0
    for r in order[:lb_cap]:
        row = candmat[r]
        if not (row & used).any():
            extra += 1
            used |= row
    b = order[0]
    return int(viol.size), int(in_count) + extra, int(viol[b]), int(cnt[b])


def nn_candidates(D, labels, in_mask, out_mask, min_opp, min_same, xstar):
    """Candidate protectors of violated point xstar (ascending index) and,
    per candidate, how many currently violated points it would protect."""
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    free = in_mask == 0
    avail = free & (out_mask == 0)
    cands = np.flatnonzero(
        (labels == labels[xstar]) & avail & (D[xstar] < min_opp[xstar])
    )
    viol = np.flatnonzero(free & (min_opp < np.inf) & (min_same >= min_opp))
    use = (
        (labels[viol][:, None] == labels[cands][None, :])
        & (D[np.ix_(viol, cands)] < min_opp[viol][:, None])
    ).sum(axis=0)
    return cands.astype(np.int64), use.astype(np.int64)
