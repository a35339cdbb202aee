"""Pairwise distance matrices over raw samples."""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np
from scipy.spatial.distance import cdist

from . import _kernels
from .errors import InvalidSpecError

METRICS = ("euclidean", "sqeuclidean", "cityblock", "cosine")


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense symmetric n x n distance matrix with a zero diagonal.

    Symmetry is exact (bitwise): values[i, j] is the same float64 as
    values[j, i], not merely close to it. ``validate=False`` skips the
    O(n^2) invariant scan and is reserved for builders that guarantee the
    invariants by construction (the mirror step makes symmetry structural).
    """

    values: np.ndarray
    metric: str = "euclidean"
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        v = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise InvalidSpecError("distance matrix must be square and non-empty")
        if validate:
            if not np.all(np.isfinite(v)):
                raise InvalidSpecError("distances must be finite")
            if v.min() < 0.0:
                raise InvalidSpecError("distances must be non-negative")
            if np.any(np.diag(v) != 0.0):
                raise InvalidSpecError("diagonal must be exactly zero")
            if not np.array_equal(v, v.T):
                raise InvalidSpecError("distance matrix must be exactly symmetric")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def build_distance_matrix(points: np.ndarray, metric: str = "euclidean") -> DistanceMatrix:
    """Compute all pairwise distances under the named metric.

    The upper triangle is mirrored onto the lower one, so the result is
    bitwise symmetric regardless of floating-point evaluation order. For
    the cosine metric a zero vector has no direction, so any all-zero
    sample row is rejected.
    """
    if metric not in METRICS:
        raise InvalidSpecError(f"unknown metric {metric!r}, expected one of {METRICS}")
    points = np.asarray(points, dtype=np.float64)
    if not np.all(np.isfinite(points)):
        raise InvalidSpecError("points must be finite")
    if metric == "cosine":
        norms = np.linalg.norm(points, axis=1)
        bad = np.nonzero(norms == 0.0)[0]
        if bad.size:
            raise InvalidSpecError(f"cosine distance undefined for all-zero sample {int(bad[0])}")
    values = cdist(points, points, metric=metric)
    if metric == "cosine":
        np.maximum(values, 0.0, out=values)  # cosine rounds to tiny negatives
    np.fill_diagonal(values, 0.0)
    _kernels.mirror_upper(values)
    # Finite inputs under these metrics yield finite non-negative distances,
    # the diagonal was just zeroed, and mirroring makes symmetry structural,
    # so the O(n^2) revalidation pass is skipped.
    return DistanceMatrix(values, metric=metric, validate=False)
