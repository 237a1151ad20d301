"""Weighted nearest-neighbor classification over a condensed subset.

A WeightedCondensedSet pairs chosen sample indices with positive weights.
A query takes the label of the condensed point minimizing
distance(query, point) / weight(point); queries themselves carry weight 1.
Ties go to the point listed earliest in `indices`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .core import Dataset, WeightFn, as_coords


class WeightedCondensedSet:
    """Distinct sample indices of a source dataset plus a weight for each.

    `weights` must be defined on exactly the chosen indices. The index
    order is meaningful: classification ties resolve toward the earliest
    entry.
    """

    __slots__ = ("source", "indices", "weights", "_points", "_labels", "_warr")

    def __init__(self, source: Dataset, indices, weights: WeightFn):
        indices = tuple(int(i) for i in indices)
        if not indices:
            raise ValueError("a condensed set must be non-empty")
        if len(set(indices)) != len(indices):
            raise ValueError("condensed indices must be distinct")
        for i in indices:
            if not 0 <= i < source.n:
                raise ValueError(f"index {i} out of range for the source dataset")
        if set(weights.keys()) != set(indices):
            raise ValueError("weights must be defined on exactly the condensed indices")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "weights", weights)
        idx = list(indices)
        object.__setattr__(self, "_points", np.ascontiguousarray(source.coords[idx]))
        object.__setattr__(self, "_labels", np.ascontiguousarray(source.labels[idx]))
        object.__setattr__(
            self, "_warr", np.array([weights[i] for i in indices], dtype=np.float64)
        )

    def __setattr__(self, name, value):
        raise AttributeError("WeightedCondensedSet is immutable")

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def size(self) -> int:
        return len(self.indices)

    def __repr__(self) -> str:
        return f"WeightedCondensedSet(size={len(self.indices)}, of n={self.source.n})"


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of replaying the sample through a condensed classifier.
    violations lists (sample index, predicted label) for each mismatch."""

    consistent: bool
    violations: tuple[tuple[int, int], ...]


def classify_batch(queries, condensed: WeightedCondensedSet) -> np.ndarray:
    """Predicted labels for a (q, d) array of query points."""
    Q = np.ascontiguousarray(queries, dtype=np.float64)
    if Q.ndim != 2 or Q.shape[1] != condensed.source.dim:
        raise ValueError("queries must be a 2-d array matching the dataset dimension")
    if not np.isfinite(Q).all():
        raise ValueError("query coordinates must be finite")
    pos = K.wnn_argmin(Q, condensed._points, condensed._warr, condensed.source.metric.code)
    return condensed._labels[pos]


def classify(q, condensed: WeightedCondensedSet) -> int:
    """Predicted label for a single query point."""
    q = as_coords(q)
    if q.shape[0] != condensed.source.dim:
        raise ValueError("query dimension does not match the dataset")
    return int(classify_batch(q[None, :], condensed)[0])


def consistency_check(ds: Dataset, condensed: WeightedCondensedSet) -> ConsistencyReport:
    """Replay every sample point through the condensed classifier and
    collect mismatches. Consistent means zero mismatches."""
    if condensed.source.dim != ds.dim:
        raise ValueError("condensed set and dataset dimensions differ")
    preds = classify_batch(ds.coords, condensed)
    bad = np.flatnonzero(preds != ds.labels)
    violations = tuple((int(i), int(preds[i])) for i in bad)
    return ConsistencyReport(consistent=len(violations) == 0, violations=violations)


def generalization_bound(
    n: int, m: int, delta: float, permutation_invariant: bool = False
) -> float:
    """High-probability excess-error bound for a classifier reconstructed
    from m of n sample points, at confidence 1 - delta. Natural logarithms.

    Non-invariant form:        (2/(n-m)) * (m*ln(2n) + ln(n/delta))
    Permutation-invariant:     (2/(n-m)) * (m*ln(2en/m) + ln(n/delta))
    """
    n = int(n)
    m = int(m)
    delta = float(delta)
    if m < 1:
        raise ValueError("m must be at least 1")
    if m >= n:
        raise ValueError("m must be smaller than n")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if permutation_invariant:
        term = m * math.log(2.0 * math.e * n / m)
    else:
        term = m * math.log(2.0 * n)
    return (2.0 / (n - m)) * (term + math.log(n / delta))
