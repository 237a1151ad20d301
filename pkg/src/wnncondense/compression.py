"""Sample compression codec for enemy-distance-weighted classifiers.

A condensed set whose weights equal each prototype's nearest-enemy
distance can be shipped as bare labeled points: the prototypes plus, as
witnesses, the nearest enemy of each prototype. Reconstruction recovers
every prototype weight as its minimum distance to an opposite-labeled
witness. The weight equality is exact (each prototype's own nearest enemy
is among the witnesses, and no witness of opposite label can be closer),
so the rebuilt classifier matches the original. Both halves of the code
are stored in a canonical sort order, making the codec invariant to
prototype and witness permutations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .classifier import WeightedCondensedSet
from .core import Dataset, LabeledPoint, MetricKind, as_coords


def _canon(points: tuple[LabeledPoint, ...]) -> tuple[LabeledPoint, ...]:
    return tuple(sorted(points, key=lambda p: (p.label, p.coords)))


@dataclass(frozen=True)
class CompressionCode:
    """Prototypes and witnesses, canonically ordered. Each prototype class
    must see at least one opposite-labeled witness unless the prototypes
    span a single class."""

    prototypes: tuple[LabeledPoint, ...]
    witnesses: tuple[LabeledPoint, ...]
    metric: MetricKind = MetricKind.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "prototypes", _canon(tuple(self.prototypes)))
        object.__setattr__(self, "witnesses", _canon(tuple(self.witnesses)))
        if not self.prototypes:
            raise ValueError("a compression code needs at least one prototype")
        dims = {len(p.coords) for p in self.prototypes} | {
            len(w.coords) for w in self.witnesses
        }
        if len(dims) != 1:
            raise ValueError("prototypes and witnesses must share a dimension")
        proto_classes = {p.label for p in self.prototypes}
        if len(proto_classes) > 1:
            wit_classes = {w.label for w in self.witnesses}
            for c in proto_classes:
                if not (wit_classes - {c}):
                    raise ValueError(
                        f"prototype class {c} has no opposite-labeled witness"
                    )


def encode(ds: Dataset, condensed: WeightedCondensedSet) -> CompressionCode:
    """Compress a condensed set whose weights equal enemy distances.

    Raises if any stored weight differs from the prototype's actual
    nearest-enemy distance (the codec only represents that weighting).
    """
    if condensed.source is not ds:
        raise ValueError("condensed set must reference the dataset being encoded")
    idx = list(condensed.indices)
    D = K.dist_matrix(ds.coords[idx], ds.coords, ds.metric.code)
    witnesses: dict[int, LabeledPoint] = {}
    for k, i in enumerate(idx):
        enemy = ds.labels != ds.labels[i]
        if not enemy.any():
            expected = float("inf")
        else:
            masked = np.where(enemy, D[k], np.inf)
            j = int(np.argmin(masked))  # nearest enemy, lowest index on ties
            expected = float(masked[j])
            witnesses.setdefault(j, ds.point(j))
        if condensed.weights[i] != expected:
            raise ValueError(
                f"prototype {i} carries weight {condensed.weights[i]!r}, "
                f"but its enemy distance is {expected!r}"
            )
    prototypes = tuple(ds.point(i) for i in idx)
    return CompressionCode(prototypes, tuple(witnesses.values()), ds.metric)


class ReconstructedWnn:
    """Weighted classifier rebuilt from a CompressionCode alone."""

    __slots__ = ("points", "labels", "weights", "metric")

    def __init__(self, code: CompressionCode):
        protos = code.prototypes
        points = np.array([p.coords for p in protos], dtype=np.float64)
        labels = np.array([p.label for p in protos], dtype=np.int64)
        weights = np.empty(len(protos), dtype=np.float64)
        if code.witnesses:
            wpts = np.array([w.coords for w in code.witnesses], dtype=np.float64)
            wlab = np.array([w.label for w in code.witnesses], dtype=np.int64)
            WD = K.dist_matrix(points, wpts, code.metric.code)
        for k in range(len(protos)):
            if code.witnesses:
                opp = wlab != labels[k]
            if code.witnesses and opp.any():
                weights[k] = np.where(opp, WD[k], np.inf).min()
            else:
                # Permitted only for single-class prototype sets; +inf is
                # the sentinel weight for "no enemy anywhere".
                weights[k] = np.inf
        points.setflags(write=False)
        labels.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "metric", code.metric)

    def __setattr__(self, name, value):
        raise AttributeError("ReconstructedWnn is immutable")

    def classify_batch(self, queries) -> np.ndarray:
        Q = np.ascontiguousarray(queries, dtype=np.float64)
        if Q.ndim != 2 or Q.shape[1] != self.points.shape[1]:
            raise ValueError("queries must be a 2-d array matching the code dimension")
        pos = K.wnn_argmin(Q, self.points, self.weights, self.metric.code)
        return self.labels[pos]

    def classify(self, q) -> int:
        q = as_coords(q)
        return int(self.classify_batch(q[None, :])[0])


def reconstruct(code: CompressionCode) -> ReconstructedWnn:
    """Rebuild the weighted classifier encoded by `code`."""
    return ReconstructedWnn(code)


def save_code(code: CompressionCode, path) -> None:
    """Write a code as x0..xk,label,role rows (roles prototype/witness)."""
    import csv

    from .datasets import _fmt

    dim = len(code.prototypes[0].coords)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow([f"x{k}" for k in range(dim)] + ["label", "role"])
        for p in code.prototypes:
            wr.writerow([_fmt(c) for c in p.coords] + [str(p.label), "prototype"])
        for w in code.witnesses:
            wr.writerow([_fmt(c) for c in w.coords] + [str(w.label), "witness"])


def load_code(path, metric: MetricKind = MetricKind.EUCLIDEAN) -> CompressionCode:
    """Read a code CSV back; exact round-trip with save_code."""
    from .datasets import _read_table

    coords, labels, extras = _read_table(path, "label", extra=("role",))
    protos: list[LabeledPoint] = []
    wits: list[LabeledPoint] = []
    for k, role in enumerate(extras["role"]):
        lp = LabeledPoint(tuple(coords[k]), int(labels[k]))
        r = role.strip().lower()
        if r == "prototype":
            protos.append(lp)
        elif r == "witness":
            wits.append(lp)
        else:
            raise ValueError(
                f"line {k + 2}: role must be 'prototype' or 'witness', got {role!r}"
            )
    return CompressionCode(tuple(protos), tuple(wits), metric)
