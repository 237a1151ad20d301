"""Timing comparison of the compiled kernels against the numpy fallback.

Asserts bitwise-identical outputs before timing anything, then prints a
table of per-call medians. Run from the repository root:

    python3 benchmarks/bench_kernels.py [--n 2000] [--dim 8] [--repeat 5]
"""

import argparse
import statistics
import time

import numpy as np

from wnncondense._kernels import COMPILED, _numpy as npk

if COMPILED:
    from wnncondense import _ckernels as ck
else:
    ck = None


def _best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def _assert_equal(a, b):
    if isinstance(a, tuple):
        assert len(a) == len(b)
        for x, y in zip(a, b):
            _assert_equal(x, y)
    elif isinstance(a, np.ndarray):
        assert np.array_equal(a, b), "backend outputs diverge"
    else:
        assert a == b, "backend outputs diverge"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--dim", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not COMPILED:
        raise SystemExit("compiled kernels unavailable; build with: python3 setup.py build_ext --inplace")

    rng = np.random.default_rng(0)
    n, d = args.n, args.dim
    X = rng.normal(size=(n, d))
    Q = rng.normal(size=(n // 2, d))
    labels = rng.integers(0, 2, size=n).astype(np.int64)
    w = rng.uniform(0.5, 2.0, size=n)
    cover = (rng.random((n // 4, n // 4)) < 0.05).astype(np.uint8)
    np.fill_diagonal(cover, 1)
    radii = npk.enemy_dists(X, labels, 0)
    unc = np.ones(n, dtype=np.uint8)

    cases = [
        ("dist_matrix", lambda k: k.dist_matrix(Q, X, 0)),
        ("dist_matrix/manhattan", lambda k: k.dist_matrix(Q, X, 1)),
        ("enemy_dists", lambda k: k.enemy_dists(X, labels, 0)),
        ("wnn_argmin", lambda k: k.wnn_argmin(Q, X, w, 0)),
        ("greedy_cover_dense", lambda k: k.greedy_cover_dense(cover.copy())),
        ("ball_counts", lambda k: k.ball_counts(X, radii, unc, 0)),
        ("ball_members", lambda k: k.ball_members(X, 0, radii[0], 0)),
    ]

    print(f"n={n} dim={d} repeat={args.repeat} (medians, compiled vs python)")
    print(f"{'kernel':<24}{'compiled':>12}{'python':>12}{'speedup':>10}")
    for name, call in cases:
        _assert_equal(call(ck), call(npk))
        tc = _best_of(lambda: call(ck), args.repeat)
        tp = _best_of(lambda: call(npk), args.repeat)
        print(f"{name:<24}{tc * 1e3:>10.2f}ms{tp * 1e3:>10.2f}ms{tp / tc:>9.1f}x")
    print("outputs verified bitwise identical on every kernel")


if __name__ == "__main__":
    main()
