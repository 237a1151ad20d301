"""Compiled kernels. Semantics mirror wnncondense._kernels._numpy exactly
(same accumulation order, same tie rules); keep both in sync when editing."""

from libc.math cimport INFINITY, fabs, fmax, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

LB_PRUNE = 1 << 30

cdef Py_ssize_t _LB_PRUNE = 1 << 30


cdef inline double _pair_dist(const double *a, const double *b, Py_ssize_t d, int metric) noexcept nogil:
    cdef Py_ssize_t k
    cdef double s = 0.0
    cdef double diff
    if metric == 0:
        for k in range(d):
            diff = a[k] - b[k]
            s += diff * diff
        return sqrt(s)
    elif metric == 1:
        for k in range(d):
            s += fabs(a[k] - b[k])
        return s
    else:
        for k in range(d):
            s = fmax(s, fabs(a[k] - b[k]))
        return s


def dist_matrix(A, B, int metric):
    A = np.ascontiguousarray(A, dtype=np.float64)
    B = np.ascontiguousarray(B, dtype=np.float64)
    if A.ndim != 2 or B.ndim != 2:
        raise ValueError("expected a 2-d array of points")
    if A.shape[1] != B.shape[1]:
        raise ValueError("point sets must share a dimension")
    if metric not in (0, 1, 2):
        raise ValueError(f"unknown metric code {metric}")
    cdef const double[:, ::1] Av = A
    cdef const double[:, ::1] Bv = B
    cdef Py_ssize_t n = Av.shape[0], m = Bv.shape[0], d = Av.shape[1]
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] Ov = out
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            for j in range(m):
                Ov[i, j] = _pair_dist(&Av[i, 0], &Bv[j, 0], d, metric)
    return out


def enemy_dists(X, labels, int metric):
    X = np.ascontiguousarray(X, dtype=np.float64)
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    cdef const double[:, ::1] Xv = X
    cdef const cnp.int64_t[::1] Lv = labels
    cdef Py_ssize_t n = Xv.shape[0], d = Xv.shape[1]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] Ov = out
    cdef Py_ssize_t i, j
    cdef double best, dist
    with nogil:
        for i in range(n):
            best = INFINITY
            for j in range(n):
                if Lv[j] != Lv[i]:
                    dist = _pair_dist(&Xv[i, 0], &Xv[j, 0], d, metric)
                    if dist < best:
                        best = dist
            Ov[i] = best
    return out


def wnn_argmin(Q, P, w, int metric):
    Q = np.ascontiguousarray(Q, dtype=np.float64)
    P = np.ascontiguousarray(P, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    if P.shape[0] == 0:
        raise ValueError("need at least one candidate point")
    cdef const double[:, ::1] Qv = Q
    cdef const double[:, ::1] Pv = P
    cdef const double[::1] Wv = w
    cdef Py_ssize_t nq = Qv.shape[0], m = Pv.shape[0], d = Qv.shape[1]
    out = np.empty(nq, dtype=np.int64)
    cdef cnp.int64_t[::1] Ov = out
    cdef Py_ssize_t i, j, arg
    cdef double best, wd
    with nogil:
        for i in range(nq):
            best = INFINITY
            arg = 0
            for j in range(m):
                wd = _pair_dist(&Qv[i, 0], &Pv[j, 0], d, metric) / Wv[j]
                if wd < best:
                    best = wd
                    arg = j
            Ov[i] = arg
    return out


def greedy_cover_dense(cover):
    cover = np.ascontiguousarray(cover, dtype=np.uint8)
    if cover.ndim != 2 or cover.shape[0] != cover.shape[1]:
        raise ValueError("cover matrix must be square")
    cdef const cnp.uint8_t[:, ::1] Cv = cover
    cdef Py_ssize_t n = Cv.shape[0]
    unc = np.ones(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] Uv = unc
    picks = []
    newly = []
    cdef Py_ssize_t remaining = n, i, j, best, bestc, c
    while remaining > 0:
        best = -1
        bestc = -1
        with nogil:
            for i in range(n):
                c = 0
                for j in range(n):
                    if Cv[i, j] and Uv[j]:
                        c += 1
                if c > bestc:
                    bestc = c
                    best = i
        if bestc == 0:
            raise ValueError("cover matrix cannot cover all columns")
        picks.append(best)
        newly.append(bestc)
        with nogil:
            for j in range(n):
                if Cv[best, j] and Uv[j]:
                    Uv[j] = 0
                    remaining -= 1
    return np.asarray(picks, dtype=np.int64), np.asarray(newly, dtype=np.int64)


def ball_counts(X, radii, uncovered, int metric):
    X = np.ascontiguousarray(X, dtype=np.float64)
    radii = np.ascontiguousarray(radii, dtype=np.float64)
    uncovered = np.ascontiguousarray(uncovered, dtype=np.uint8)
    cdef const double[:, ::1] Xv = X
    cdef const double[::1] Rv = radii
    cdef const cnp.uint8_t[::1] Uv = uncovered
    cdef Py_ssize_t n = Xv.shape[0], d = Xv.shape[1]
    out = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] Ov = out
    cdef Py_ssize_t i, j, c
    cdef double thr
    with nogil:
        for i in range(n):
            thr = Rv[i]
            c = 0
            for j in range(n):
                if Uv[j] and _pair_dist(&Xv[i, 0], &Xv[j, 0], d, metric) < thr:
                    c += 1
            Ov[i] = c
    return out


def ball_members(X, Py_ssize_t i, double radius, int metric):
    X = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double[:, ::1] Xv = X
    cdef Py_ssize_t n = Xv.shape[0], d = Xv.shape[1]
    out = np.empty(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] Ov = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            Ov[j] = 1 if _pair_dist(&Xv[i, 0], &Xv[j, 0], d, metric) < radius else 0
    return out


def nn_scan(D, labels, in_mask, out_mask, min_opp, min_same, Py_ssize_t in_count, Py_ssize_t lb_cap):
    cdef const double[:, ::1] Dv = D
    cdef const cnp.int64_t[::1] Lv = np.ascontiguousarray(labels, dtype=np.int64)
    cdef const cnp.uint8_t[::1] Iv = in_mask
    cdef const cnp.uint8_t[::1] Xv = out_mask
    cdef const double[::1] MOv = min_opp
    cdef const double[::1] MSv = min_same
    cdef Py_ssize_t n = Dv.shape[0]
    viol_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] viol = viol_arr
    cdef Py_ssize_t nviol = 0, i, j, v, c
    for i in range(n):
        if Iv[i] == 0 and MOv[i] != INFINITY and MSv[i] >= MOv[i]:
            viol[nviol] = i
            nviol += 1
    if nviol == 0:
        return 0, in_count, -1, 0
    cnt_arr = np.zeros(nviol, dtype=np.int64)
    cdef cnp.int64_t[::1] cnt = cnt_arr
    cdef double thr
    cdef cnp.int64_t lab
    for v in range(nviol):
        i = viol[v]
        thr = MOv[i]
        lab = Lv[i]
        c = 0
        for j in range(n):
            if Lv[j] == lab and Iv[j] == 0 and Xv[j] == 0 and Dv[i, j] < thr:
                c += 1
        if c == 0:
            return nviol, _LB_PRUNE, -1, 0
        cnt[v] = c
    # order violated rows by (candidate count, index); keys are unique per row
    order_arr = np.empty(nviol, dtype=np.int64)
    cdef cnp.int64_t[::1] order = order_arr
    cdef Py_ssize_t a, b
    cdef cnp.int64_t tmp
    for v in range(nviol):
        order[v] = v
    for a in range(1, nviol):
        tmp = order[a]
        b = a
        while b > 0 and (
            cnt[order[b - 1]] > cnt[tmp]
            or (cnt[order[b - 1]] == cnt[tmp] and viol[order[b - 1]] > viol[tmp])
        ):
            order[b] = order[b - 1]
            b -= 1
        order[b] = tmp
    used = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] UZ = used
    cdef Py_ssize_t extra = 0, r, top = lb_cap if lb_cap < nviol else nviol
    cdef bint clash
    for r in range(top):
        v = order[r]
        i = viol[v]
        thr = MOv[i]
        lab = Lv[i]
        clash = False
        for j in range(n):
            if UZ[j] and Lv[j] == lab and Iv[j] == 0 and Xv[j] == 0 and Dv[i, j] < thr:
                clash = True
                break
        if not clash:
            extra += 1
            for j in range(n):
                if Lv[j] == lab and Iv[j] == 0 and Xv[j] == 0 and Dv[i, j] < thr:
                    UZ[j] = 1
    v = order[0]
    return nviol, in_count + extra, <Py_ssize_t> viol[v], <Py_ssize_t> cnt[v]


def nn_candidates(D, labels, in_mask, out_mask, min_opp, min_same, Py_ssize_t xstar):
    cdef const double[:, ::1] Dv = D
    cdef const cnp.int64_t[::1] Lv = np.ascontiguousarray(labels, dtype=np.int64)
    cdef const cnp.uint8_t[::1] Iv = in_mask
    cdef const cnp.uint8_t[::1] Xv = out_mask
    cdef const double[::1] MOv = min_opp
    cdef const double[::1] MSv = min_same
    cdef Py_ssize_t n = Dv.shape[0]
    cand_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] cand = cand_arr
    cdef Py_ssize_t ncand = 0, i, j, k
    cdef double thr = MOv[xstar]
    cdef cnp.int64_t lab = Lv[xstar]
    for j in range(n):
        if Lv[j] == lab and Iv[j] == 0 and Xv[j] == 0 and Dv[xstar, j] < thr:
            cand[ncand] = j
            ncand += 1
    use = np.zeros(ncand, dtype=np.int64)
    cdef cnp.int64_t[::1] Usv = use
    for i in range(n):
        if Iv[i] == 0 and MOv[i] != INFINITY and MSv[i] >= MOv[i] and Lv[i] == lab:
            for k in range(ncand):
                if Dv[i, cand[k]] < MOv[i]:
                    Usv[k] += 1
    return cand_arr[:ncand].copy(), use
