"""Core types for labeled point sets in a metric space.

A Dataset holds points with integer labels under one of the built-in
metrics. Weights attach to points through a WeightFn; the weighted
distance between two weighted points divides the metric distance by the
product of their weights, so heavier points pull queries toward
themselves. The decision boundary between two weighted points under this
rule is a circle (or a line when the weights tie), exposed here for
plotting and tests.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import _kernels as K


class MetricKind(enum.Enum):
    """Built-in metrics. All three vanish exactly on identical coordinates."""

    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"
    CHEBYSHEV = "chebyshev"

    @property
    def code(self) -> int:
        return _METRIC_CODES[self]

    @classmethod
    def parse(cls, name: str) -> "MetricKind":
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ValueError(f"unknown metric {name!r}") from None


_METRIC_CODES = {
    MetricKind.EUCLIDEAN: 0,
    MetricKind.MANHATTAN: 1,
    MetricKind.CHEBYSHEV: 2,
}


def as_coords(obj) -> np.ndarray:
    """Coerce one point to a finite float64 vector."""
    arr = np.asarray(obj, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a point must be a non-empty 1-d sequence of reals")
    if not np.isfinite(arr).all():
        raise ValueError("point coordinates must be finite")
    return np.ascontiguousarray(arr)


@dataclass(frozen=True)
class LabeledPoint:
    """One sample point: immutable coordinates plus an integer label."""

    coords: tuple[float, ...]
    label: int

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))
        object.__setattr__(self, "label", int(self.label))
        if len(self.coords) == 0:
            raise ValueError("a point needs at least one coordinate")
        if not all(math.isfinite(c) for c in self.coords):
            raise ValueError("point coordinates must be finite")


class Dataset:
    """An immutable labeled sample.

    Invariants enforced at construction: at least one point, at least one
    dimension, finite coordinates, integer labels, and no two points with
    identical coordinates but different labels (such a pair sits at
    distance zero under every built-in metric, which no classifier over
    the sample can separate).
    """

    __slots__ = ("coords", "labels", "metric")

    def __init__(self, coords, labels, metric: MetricKind = MetricKind.EUCLIDEAN):
        coords = np.ascontiguousarray(coords, dtype=np.float64)
        labels = np.ascontiguousarray(labels, dtype=np.int64)
        if coords.ndim != 2 or coords.shape[0] == 0 or coords.shape[1] == 0:
            raise ValueError("coords must be a non-empty (n, d) array")
        if labels.shape != (coords.shape[0],):
            raise ValueError("labels must be a 1-d array aligned with coords")
        if not np.isfinite(coords).all():
            raise ValueError("coordinates must be finite")
        if not isinstance(metric, MetricKind):
            metric = MetricKind.parse(metric)
        seen: dict[bytes, int] = {}
        for i in range(coords.shape[0]):
            key = coords[i].tobytes()
            j = seen.setdefault(key, i)
            if labels[j] != labels[i]:
                raise ValueError(
                    f"points {j} and {i} share coordinates but carry different labels"
                )
        coords.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "metric", metric)

    def __setattr__(self, name, value):
        raise AttributeError("Dataset is immutable")

    @classmethod
    def from_points(
        cls, points: Iterable[LabeledPoint], metric: MetricKind = MetricKind.EUCLIDEAN
    ) -> "Dataset":
        pts = list(points)
        if not pts:
            raise ValueError("need at least one point")
        coords = np.array([p.coords for p in pts], dtype=np.float64)
        labels = np.array([p.label for p in pts], dtype=np.int64)
        return cls(coords, labels, metric)

    def point(self, i: int) -> LabeledPoint:
        return LabeledPoint(tuple(self.coords[i]), int(self.labels[i]))

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    @property
    def n_classes(self) -> int:
        return int(np.unique(self.labels).size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.metric is other.metric
            and self.coords.shape == other.coords.shape
            and bool(np.all(self.coords == other.coords))
            and bool(np.all(self.labels == other.labels))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Dataset(n={self.n}, dim={self.dim}, classes={self.n_classes}, metric={self.metric.value})"


class WeightFn:
    """Positive weights keyed by sample index. +inf is the sentinel weight
    that collapses every weighted distance to a point to zero (used for
    single-class condensed sets)."""

    __slots__ = ("_by_index",)

    def __init__(self, by_index: Mapping[int, float]):
        store = {}
        for i, w in by_index.items():
            w = float(w)
            if math.isnan(w) or w <= 0.0:
                raise ValueError(f"weight for index {i} must be positive or +inf, got {w}")
            store[int(i)] = w
        self._by_index = store

    def __getitem__(self, i: int) -> float:
        return self._by_index[i]

    def __contains__(self, i: int) -> bool:
        return i in self._by_index

    def __len__(self) -> int:
        return len(self._by_index)

    def keys(self):
        return self._by_index.keys()

    def items(self):
        return self._by_index.items()

    def __repr__(self) -> str:
        return f"WeightFn({self._by_index!r})"


def distance(a, b, metric: MetricKind = MetricKind.EUCLIDEAN) -> float:
    """Metric distance between two points.

    Routed through the same kernel as all batched paths, so scalar and
    batch computations of the same pair agree bit for bit.
    """
    a = as_coords(a)
    b = as_coords(b)
    if a.shape != b.shape:
        raise ValueError("points must share a dimension")
    return float(K.dist_matrix(a[None, :], b[None, :], metric.code)[0, 0])


def weighted_distance(
    a, b, wa: float, wb: float, metric: MetricKind = MetricKind.EUCLIDEAN
) -> float:
    """distance(a, b) / (wa * wb). Either weight at +inf gives 0."""
    wa = float(wa)
    wb = float(wb)
    for w in (wa, wb):
        if math.isnan(w) or w <= 0.0:
            raise ValueError(f"weights must be positive or +inf, got {w}")
    d = distance(a, b, metric)
    if math.isinf(wa) or math.isinf(wb):
        return 0.0
    return d / (wa * wb)


def enemy_distances(ds: Dataset) -> np.ndarray:
    """For each point, the distance to its nearest differently-labeled
    point; +inf where no such point exists (single-class datasets)."""
    return K.enemy_dists(ds.coords, ds.labels, ds.metric.code)


def nearest_enemy_distance(ds: Dataset, i: int) -> float | None:
    """Distance from point i to its nearest enemy, or None when the
    dataset holds a single class (callers map None to +inf)."""
    if not 0 <= i < ds.n:
        raise IndexError(f"point index {i} out of range")
    mask = ds.labels != ds.labels[i]
    if not mask.any():
        return None
    row = K.dist_matrix(ds.coords[i : i + 1], ds.coords[mask], ds.metric.code)[0]
    return float(row.min())


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float


@dataclass(frozen=True)
class Line:
    """A line given by a point on it and a unit normal."""

    point: tuple[float, float]
    normal: tuple[float, float]


def decision_boundary_circle(p1, w1: float, p2, w2: float) -> Circle | Line:
    """Euclidean decision boundary between two weighted points in the plane.

    The locus of queries q with distance(q, p1)/w1 == distance(q, p2)/w2 is
    a circle when the weights differ; equal weights degenerate to the
    perpendicular bisector, returned as a Line. Swapping the two weighted
    points yields the identical boundary.
    """
    p1 = as_coords(p1)
    p2 = as_coords(p2)
    if p1.shape != (2,) or p2.shape != (2,):
        raise ValueError("boundary geometry is only defined in the plane")
    if np.array_equal(p1, p2):
        raise ValueError("the two points must be distinct")
    for w in (w1, w2):
        w = float(w)
        if math.isnan(w) or math.isinf(w) or w <= 0.0:
            raise ValueError(f"boundary weights must be positive and finite, got {w}")
    w1 = float(w1)
    w2 = float(w2)
    if w1 == w2:
        mid = (p1 + p2) / 2.0
        diff = p2 - p1
        norm = math.sqrt(diff[0] * diff[0] + diff[1] * diff[1])
        return Line((float(mid[0]), float(mid[1])), (float(diff[0] / norm), float(diff[1] / norm)))
    a = w2 * w2
    b = w1 * w1
    denom = a - b
    cx = (a * p1[0] - b * p2[0]) / denom
    cy = (a * p1[1] - b * p2[1]) / denom
    radius = w1 * w2 * distance(p1, p2) / abs(denom)
    return Circle((float(cx), float(cy)), float(radius))
