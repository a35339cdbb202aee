"""Sample storage, CSV ingestion, and synthetic dataset generators.

All 2-D generators emit points strictly inside the unit box (0,1) x (0,1)
and carry ground-truth labels; uniform background noise, when requested,
is labeled as one extra cluster.  Generation is fully deterministic given
``rng_seed`` (see :mod:`transclust.rng` for the generator contract).
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CsvFormatError, InvalidSpecError
from .rng import SplitMix64

SHAPES = ("two_moon", "multi_scale", "rings", "gaussian_mixture")

# Geometry constants for the two-moon shape, in box units. The two
# half-circle arcs interlock: the upper arc opens downward, the lower arc
# (shifted right and down) opens upward. With the default jitter the gap
# between the arcs is ~0.14 while neighboring points along an arc are
# ~0.037 apart, so the ground-truth labeling stays consistent under the
# Euclidean distance for jitter well beyond the default; the documented
# threshold below which consistency holds with margin is noise_std <= 0.011.
_MOON_SCALE = 0.28
_MOON_X0 = 0.06
_MOON_Y0 = 0.25
_MOON_NOISE_STD = 0.007

_RING_RADII = (0.14, 0.30)
_RING_CENTER = (0.5, 0.5)
_RING_NOISE_STD = 0.006

# Multi-scale layout: one sparse wide cluster next to a pair of tight
# clusters whose mutual gap is smaller than the sparse cluster's internal
# gaps. Cutting the two largest tree edges then splits the sparse cluster
# instead of separating the tight pair.
_MULTI_SCALE_CENTERS = ((0.28, 0.50), (0.78, 0.46), (0.78, 0.54))
_MULTI_SCALE_STDS = (0.085, 0.005, 0.005)

_GAUSS_STD = 0.04
_GAUSS_SEPARATION = 0.28

_BOX_LO = 0.002
_BOX_HI = 0.998


@dataclass(frozen=True)
class DataSet:
    """n samples in R^l with optional contiguous ground-truth labels."""

    points: np.ndarray
    labels: np.ndarray | None = None
    name: str = "dataset"

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise InvalidSpecError("points must be a non-empty n x l matrix")
        if not np.all(np.isfinite(pts)):
            raise InvalidSpecError("points must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=np.int64)
            if lab.shape != (pts.shape[0],):
                raise InvalidSpecError("labels length must equal sample count")
            k = int(lab.max()) + 1 if lab.size else 0
            if lab.min() < 0 or len(np.unique(lab)) != k:
                raise InvalidSpecError("labels must form a contiguous range {0..k-1}")
            lab.setflags(write=False)
            object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def k(self) -> int | None:
        """Number of ground-truth clusters, or None when unlabeled."""
        if self.labels is None:
            return None
        return int(self.labels.max()) + 1


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters for one synthetic dataset.

    ``noise_std`` is the coordinate jitter in box units; ``separation`` is
    the extra vertical gap between the two moons or the minimum center
    distance for gaussian mixtures; ``radii``/``centers``/``cluster_std``
    override the per-shape defaults. Gaussian draws are truncated at
    ``truncate_sigmas`` standard deviations so cluster extents are bounded.
    """

    shape: str
    samples_per_cluster: tuple[int, ...]
    noise_count: int = 0
    rng_seed: int = 0
    noise_std: float | None = None
    separation: float | None = None
    radii: tuple[float, ...] | None = None
    centers: tuple[tuple[float, float], ...] | None = None
    cluster_std: float | tuple[float, ...] | None = None
    truncate_sigmas: float | None = 3.0

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise InvalidSpecError(f"unknown shape {self.shape!r}, expected one of {SHAPES}")
        spc = tuple(int(c) for c in self.samples_per_cluster)
        if not spc or any(c < 1 for c in spc):
            raise InvalidSpecError("samples_per_cluster entries must be >= 1")
        object.__setattr__(self, "samples_per_cluster", spc)
        if self.noise_count < 0:
            raise InvalidSpecError("noise_count must be >= 0")


def load_csv(path, label_column: int | None = None, name: str | None = None) -> DataSet:
    """Load a dataset from a comma-separated UTF-8 file.

    A header row is auto-detected: the first row is treated as a header iff
    none of its cells parses as a finite number. ``label_column`` is a
    zero-based column index (negative indices count from the end); string
    labels are mapped to {0..k-1} in order of first appearance, and numeric
    labels that are not already contiguous from 0 are remapped with a
    warning.
    """
    path = Path(path)
    rows: list[tuple[int, list[str]]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, cells in enumerate(csv.reader(fh), start=1):
            if not cells or all(c.strip() == "" for c in cells):
                continue
            rows.append((lineno, [c.strip() for c in cells]))
    if rows and _is_header(rows[0][1]):
        rows = rows[1:]
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")

    arity = len(rows[0][1])
    if label_column is not None:
        label_column = label_column if label_column >= 0 else arity + label_column
        if not 0 <= label_column < arity:
            raise CsvFormatError(f"{path}: label column {label_column} out of range for {arity} columns")
        if arity < 2:
            raise CsvFormatError(f"{path}: need at least one feature column besides the label")

    points = np.empty((len(rows), arity - (1 if label_column is not None else 0)))
    raw_labels: list[str] = []
    for r, (lineno, cells) in enumerate(rows):
        if len(cells) != arity:
            raise CsvFormatError(f"{path}: row {lineno}: expected {arity} cells, got {len(cells)}")
        j = 0
        for c, cell in enumerate(cells):
            if c == label_column:
                raw_labels.append(cell)
                continue
            try:
                value = float(cell)
            except ValueError:
                value = math.nan
            if not math.isfinite(value):
                raise CsvFormatError(f"{path}: row {lineno}: cell {c} is not a finite number: {cell!r}")
            points[r, j] = value
            j += 1

    labels = _map_labels(raw_labels, str(path)) if label_column is not None else None
    return DataSet(points, labels, name=name or path.stem)


def write_csv(data: DataSet, path) -> None:
    """Write points (and the label column last, if present) as CSV.

    Floats are written with shortest round-trip precision, so a
    load_csv/write_csv cycle preserves every cell value exactly.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for i in range(data.n):
            row = [repr(float(v)) for v in data.points[i]]
            if data.labels is not None:
                row.append(str(int(data.labels[i])))
            writer.writerow(row)


def _is_header(cells: list[str]) -> bool:
    for cell in cells:
        try:
            if math.isfinite(float(cell)):
                return False
        except ValueError:
            continue
    return True


def _map_labels(raw: list[str], origin: str) -> np.ndarray:
    values: list[int] = []
    numeric = True
    for cell in raw:
        try:
            f = float(cell)
        except ValueError:
            numeric = False
            break
        if not f.is_integer():
            numeric = False
            break
        values.append(int(f))
    if numeric:
        uniq = sorted(set(values))
        if uniq != list(range(len(uniq))):
            warnings.warn(
                f"{origin}: label values {uniq} are not contiguous from 0; remapping",
                stacklevel=3,
            )
        remap = {v: i for i, v in enumerate(uniq)}
        return np.array([remap[v] for v in values], dtype=np.int64)
    # String labels: map in order of first appearance.
    seen: dict[str, int] = {}
    out = np.empty(len(raw), dtype=np.int64)
    for i, cell in enumerate(raw):
        if cell not in seen:
            seen[cell] = len(seen)
        out[i] = seen[cell]
    return out


def generate(spec: SyntheticSpec) -> DataSet:
    """Generate a labeled synthetic dataset from a spec."""
    rng = SplitMix64(spec.rng_seed)
    if spec.shape == "two_moon":
        pts, labels = _two_moon(spec, rng)
    elif spec.shape == "multi_scale":
        pts, labels = _multi_scale(spec, rng)
    elif spec.shape == "rings":
        pts, labels = _rings(spec, rng)
    else:
        pts, labels = _gaussian_mixture(spec, rng)

    if spec.noise_count:
        noise_label = max(labels) + 1
        for _ in range(spec.noise_count):
            pts.append((0.05 + 0.90 * rng.uniform(), 0.05 + 0.90 * rng.uniform()))
            labels.append(noise_label)

    arr = np.clip(np.array(pts, dtype=np.float64), _BOX_LO, _BOX_HI)
    return DataSet(arr, np.array(labels, dtype=np.int64), name=spec.shape)


def _truncated_normal(rng: SplitMix64, std: float, cap: float | None) -> float:
    z = rng.normal()
    if cap is not None:
        while abs(z) > cap:
            z = rng.normal()
    return std * z


def _two_moon(spec, rng):
    if len(spec.samples_per_cluster) != 2:
        raise InvalidSpecError("two_moon needs exactly 2 cluster sizes")
    std = spec.noise_std if spec.noise_std is not None else _MOON_NOISE_STD
    extra_gap = spec.separation or 0.0
    cap = spec.truncate_sigmas
    pts, labels = [], []
    for moon, count in enumerate(spec.samples_per_cluster):
        for i in range(count):
            t = math.pi * (i / (count - 1) if count > 1 else 0.5)
            if moon == 0:
                x, y = math.cos(t), math.sin(t)
            else:
                x, y = 1.0 - math.cos(t), 0.5 - math.sin(t) - extra_gap / _MOON_SCALE
            px = (x + 1.0) * _MOON_SCALE + _MOON_X0 + _truncated_normal(rng, std, cap)
            py = (y + 0.5) * _MOON_SCALE + _MOON_Y0 + _truncated_normal(rng, std, cap)
            pts.append((px, py))
            labels.append(moon)
    return pts, labels


def _rings(spec, rng):
    radii = spec.radii if spec.radii is not None else _RING_RADII
    if len(radii) != len(spec.samples_per_cluster):
        raise InvalidSpecError("rings needs one radius per cluster")
    std = spec.noise_std if spec.noise_std is not None else _RING_NOISE_STD
    cap = spec.truncate_sigmas
    cx, cy = _RING_CENTER
    pts, labels = [], []
    for ring, (radius, count) in enumerate(zip(radii, spec.samples_per_cluster)):
        jitter = (2.0 * math.pi / count) * 0.25
        for i in range(count):
            theta = 2.0 * math.pi * i / count + jitter * (2.0 * rng.uniform() - 1.0)
            r = radius + _truncated_normal(rng, std, cap)
            pts.append((cx + r * math.cos(theta), cy + r * math.sin(theta)))
            labels.append(ring)
    return pts, labels


def _resolve_stds(spec, defaults, k):
    std = spec.cluster_std if spec.cluster_std is not None else defaults
    if isinstance(std, (int, float)):
        return (float(std),) * k
    if len(std) != k:
        raise InvalidSpecError("cluster_std arity must match samples_per_cluster")
    return tuple(float(s) for s in std)


def _gaussian_cluster(rng, center, std, count, cap):
    return [
        (
            center[0] + _truncated_normal(rng, std, cap),
            center[1] + _truncated_normal(rng, std, cap),
        )
        for _ in range(count)
    ]


def _multi_scale(spec, rng):
    k = len(spec.samples_per_cluster)
    centers = spec.centers if spec.centers is not None else _MULTI_SCALE_CENTERS
    if len(centers) != k:
        raise InvalidSpecError("multi_scale needs one center per cluster")
    stds = _resolve_stds(spec, _MULTI_SCALE_STDS[: k] if k <= 3 else _MULTI_SCALE_STDS, k)
    pts, labels = [], []
    for c, count in enumerate(spec.samples_per_cluster):
        pts.extend(_gaussian_cluster(rng, centers[c], stds[c], count, spec.truncate_sigmas))
        labels.extend([c] * count)
    return pts, labels


def _gaussian_mixture(spec, rng):
    k = len(spec.samples_per_cluster)
    stds = _resolve_stds(spec, _GAUSS_STD, k)
    if spec.centers is not None:
        if len(spec.centers) != k:
            raise InvalidSpecError("gaussian_mixture needs one center per cluster")
        centers = spec.centers
    else:
        separation = spec.separation if spec.separation is not None else _GAUSS_SEPARATION
        centers = _draw_centers(rng, k, separation)
    pts, labels = [], []
    for c, count in enumerate(spec.samples_per_cluster):
        pts.extend(_gaussian_cluster(rng, centers[c], stds[c], count, spec.truncate_sigmas))
        labels.extend([c] * count)
    return pts, labels


def _draw_centers(rng, k, separation):
    centers: list[tuple[float, float]] = []
    for _ in range(10_000):
        cand = (0.12 + 0.76 * rng.uniform(), 0.12 + 0.76 * rng.uniform())
        if all(math.dist(cand, c) >= separation for c in centers):
            centers.append(cand)
            if len(centers) == k:
                return tuple(centers)
    raise InvalidSpecError(f"could not place {k} centers {separation} apart; lower separation")
