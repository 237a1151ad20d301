"""Dataset generators, CSV I/O, and seeded splits.

Four generator families:

* two_lines(gamma): two parallel rows of points at unit spacing, one per
  class, vertical gap 1. Every enemy ball has radius 1 and traps only its
  own center, the worst case for greedy weighted condensing.
* bc_friendly(gamma): two interleaved vertical runs plus one far outlier
  per class, placed so each outlier's enemy ball swallows its whole class.
  Greedy weighted condensing finds the two outliers immediately.
* circle(n, seed): half the points uniform on the unit disc (class 0),
  half uniform on the 1.5..3 annulus (class 1); the radial gap keeps every
  cross-class distance at least 0.5.
* blobs(n, seed, spread): a fixed six-center Gaussian mixture, centers
  alternating between the classes on a ring, each draw labeled by its
  nearest center. The labeling is deterministic, so there is zero label
  noise and test error comes only from boundary geometry.

CSV format: header row, coordinate columns then a label column, floats
written with 17 significant digits, LF line endings. Condensed-set CSVs
append a weight column; compression-code CSVs append a role column.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .classifier import WeightedCondensedSet
from .core import Dataset, MetricKind, WeightFn


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _open_rows(path):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return list(csv.reader(fh))


def _parse_float(s: str, what: str, line: int, allow_inf: bool = False) -> float:
    try:
        v = float(s)
    except ValueError:
        raise ValueError(f"line {line}: {what} {s!r} is not a number") from None
    if math.isnan(v) or (not allow_inf and math.isinf(v)):
        raise ValueError(f"line {line}: {what} {s!r} must be finite")
    return v


def _parse_label(s: str, line: int) -> int:
    try:
        return int(s)
    except ValueError:
        pass
    try:
        v = float(s)
    except ValueError:
        raise ValueError(f"line {line}: label {s!r} is not integer-codable") from None
    if not v.is_integer():
        raise ValueError(f"line {line}: label {s!r} is not integer-codable")
    return int(v)


def _read_table(path, label_column: str, extra: tuple[str, ...] = ()):
    rows = _open_rows(path)
    if not rows:
        raise ValueError("line 1: empty file, expected a header row")
    header = [h.strip() for h in rows[0]]
    if label_column not in header:
        raise ValueError(f"line 1: no label column named {label_column!r}")
    for col in extra:
        if col not in header:
            raise ValueError(f"line 1: missing required column {col!r}")
    special = {label_column, *extra}
    coord_cols = [k for k, h in enumerate(header) if h not in special]
    if not coord_cols:
        raise ValueError("line 1: no coordinate columns")
    if len(rows) == 1:
        raise ValueError("line 2: no data rows")
    coords, labels, extras = [], [], {c: [] for c in extra}
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValueError(
                f"line {r}: expected {len(header)} fields, found {len(row)}"
            )
        coords.append([_parse_float(row[k], f"coordinate {header[k]}", r) for k in coord_cols])
        labels.append(_parse_label(row[header.index(label_column)], r))
        for c in extra:
            extras[c].append(row[header.index(c)])
    return np.array(coords, dtype=np.float64), np.array(labels, dtype=np.int64), extras


def load_csv(path, label_column: str = "label", metric: MetricKind = MetricKind.EUCLIDEAN) -> Dataset:
    """Load a dataset CSV. All non-label columns are coordinates, in
    header order. Malformed content reports its 1-based line number."""
    coords, labels, _ = _read_table(path, label_column)
    return Dataset(coords, labels, metric)


def save_csv(ds: Dataset, path) -> None:
    """Write a dataset CSV (x0..xk,label). load_csv(save_csv(ds)) == ds."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow([f"x{k}" for k in range(ds.dim)] + ["label"])
        for i in range(ds.n):
            wr.writerow([_fmt(c) for c in ds.coords[i]] + [str(int(ds.labels[i]))])


def save_condensed_csv(cset: WeightedCondensedSet, path) -> None:
    """Write a condensed set as x0..xk,label,weight rows in index order."""
    ds = cset.source
    with open(path, "w", encoding="utf-8", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow([f"x{k}" for k in range(ds.dim)] + ["label", "weight"])
        for i in cset.indices:
            wr.writerow(
                [_fmt(c) for c in ds.coords[i]]
                + [str(int(ds.labels[i])), _fmt(cset.weights[i])]
            )


def load_condensed_csv(
    path, metric: MetricKind = MetricKind.EUCLIDEAN
) -> tuple[Dataset, WeightedCondensedSet]:
    """Load a condensed-set CSV back into a dataset of its points plus the
    condensed view over all of them (file order preserved)."""
    coords, labels, extras = _read_table(path, "label", extra=("weight",))
    weights = [
        _parse_float(s, "weight", r, allow_inf=True)
        for r, s in enumerate(extras["weight"], start=2)
    ]
    ds = Dataset(coords, labels, metric)
    cset = WeightedCondensedSet(
        ds, tuple(range(ds.n)), WeightFn({i: w for i, w in enumerate(weights)})
    )
    return ds, cset


@dataclass(frozen=True)
class SplitSpec:
    """Seeded train/test split: shuffled by the seed, the first
    round(n * train_fraction) points (clipped so both sides are
    non-empty) become the training set."""

    train_fraction: float = 0.7
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie in (0, 1)")


def split(ds: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    if ds.n < 2:
        raise ValueError("need at least two points to split")
    perm = np.random.default_rng(spec.seed).permutation(ds.n)
    k = int(round(ds.n * spec.train_fraction))
    k = min(max(k, 1), ds.n - 1)
    tr, te = perm[:k], perm[k:]
    return (
        Dataset(ds.coords[tr], ds.labels[tr], ds.metric),
        Dataset(ds.coords[te], ds.labels[te], ds.metric),
    )


def gen_two_lines(gamma: int) -> Dataset:
    """2*gamma points: class 0 at (i, 1/2), class 1 at (i, -1/2), i=1..gamma."""
    gamma = int(gamma)
    if gamma < 1:
        raise ValueError("gamma must be at least 1")
    xs = np.arange(1, gamma + 1, dtype=np.float64)
    coords = np.concatenate(
        [
            np.column_stack([xs, np.full(gamma, 0.5)]),
            np.column_stack([xs, np.full(gamma, -0.5)]),
        ]
    )
    labels = np.concatenate([np.zeros(gamma, np.int64), np.ones(gamma, np.int64)])
    return Dataset(coords, labels)


def gen_bc_friendly(gamma: int) -> Dataset:
    """2*gamma+1 points: class 0 at (0, 2i) i=1..gamma plus an outlier at
    (-t, gamma+1); class 1 at (1, 2i+1) i=1..gamma-1 plus an outlier at
    (2t, gamma+1); t = (gamma+1)^2/2. gamma must be odd and >= 3 (the
    parity keeps the outliers' enemy distances clear of their own class
    heights)."""
    gamma = int(gamma)
    if gamma < 3 or gamma % 2 == 0:
        raise ValueError("gamma must be odd and at least 3")
    t = (gamma + 1) ** 2 / 2.0
    reds = [(0.0, 2.0 * i) for i in range(1, gamma + 1)]
    blues = [(1.0, 2.0 * i + 1.0) for i in range(1, gamma)]
    coords = np.array(reds + blues + [(-t, gamma + 1.0), (2.0 * t, gamma + 1.0)])
    labels = np.array([0] * gamma + [1] * (gamma - 1) + [0, 1], dtype=np.int64)
    return Dataset(coords, labels)


def gen_circle(n: int, seed: int = 0) -> Dataset:
    """n points around the origin: n//2 uniform on the unit disc (class 0),
    the rest uniform on the 1.5..3 annulus (class 1)."""
    n = int(n)
    if n < 10:
        raise ValueError("n must be at least 10")
    rng = np.random.default_rng(seed)
    n_in = n // 2
    n_out = n - n_in
    r_in = np.sqrt(rng.uniform(0.0, 1.0, n_in))
    th_in = rng.uniform(0.0, 2.0 * np.pi, n_in)
    r_out = np.sqrt(rng.uniform(1.5**2, 3.0**2, n_out))
    th_out = rng.uniform(0.0, 2.0 * np.pi, n_out)
    coords = np.concatenate(
        [
            np.column_stack([r_in * np.cos(th_in), r_in * np.sin(th_in)]),
            np.column_stack([r_out * np.cos(th_out), r_out * np.sin(th_out)]),
        ]
    )
    labels = np.concatenate([np.zeros(n_in, np.int64), np.ones(n_out, np.int64)])
    return Dataset(coords, labels)


_BLOB_RADIUS = 1.5
_BLOB_ANGLES = np.arange(6) * (np.pi / 3.0)
_BLOB_CENTERS = _BLOB_RADIUS * np.column_stack([np.cos(_BLOB_ANGLES), np.sin(_BLOB_ANGLES)])


def gen_blobs(n: int, seed: int = 0, spread: float = 0.55) -> Dataset:
    """n draws from a six-center planar Gaussian mixture (centers alternate
    classes around a ring), each labeled by its nearest center."""
    n = int(n)
    if n < 2:
        raise ValueError("n must be at least 2")
    spread = float(spread)
    if not 0.0 < spread < math.inf:
        raise ValueError("spread must be positive and finite")
    rng = np.random.default_rng(seed)
    pick = rng.integers(0, 6, n)
    coords = _BLOB_CENTERS[pick] + spread * rng.standard_normal((n, 2))
    d2 = ((coords[:, None, :] - _BLOB_CENTERS[None, :, :]) ** 2).sum(axis=2)
    labels = (np.argmin(d2, axis=1) % 2).astype(np.int64)
    return Dataset(coords, labels)


_FAMILIES = ("two_lines", "bc_friendly", "circle", "blobs")


@dataclass(frozen=True)
class GeneratorSpec:
    """Which family to generate and with what parameters. two_lines and
    bc_friendly take gamma (their sizes are 2*gamma and 2*gamma+1);
    circle and blobs take n and seed; blobs also takes spread."""

    family: str
    gamma: int | None = None
    n: int | None = None
    seed: int = 0
    spread: float = 0.55

    def __post_init__(self):
        fam = self.family.strip().lower().replace("-", "_")
        if fam not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {_FAMILIES}")
        object.__setattr__(self, "family", fam)
        if fam in ("two_lines", "bc_friendly"):
            if self.gamma is None:
                raise ValueError(f"{fam} requires gamma")
            if self.n is not None:
                raise ValueError(f"{fam} takes gamma, not n")
        else:
            if self.n is None:
                raise ValueError(f"{fam} requires n")
            if self.gamma is not None:
                raise ValueError(f"{fam} takes n, not gamma")


def generate(spec: GeneratorSpec) -> Dataset:
    if spec.family == "two_lines":
        return gen_two_lines(spec.gamma)
    if spec.family == "bc_friendly":
        return gen_bc_friendly(spec.gamma)
    if spec.family == "circle":
        return gen_circle(spec.n, spec.seed)
    return gen_blobs(spec.n, spec.seed, spec.spread)
