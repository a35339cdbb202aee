"""K-means on matrix rows, the full transitive pipeline, and baselines.

The central trick: running K-means on the rows of the transitive distance
matrix (each sample represented by its distance profile to all others)
converts the ultrametric block structure into tight, well-separated point
groups, which plain K-means then recovers. K-means on rows of the raw
distance matrix is the duality half of that argument and is kept as its
own entry point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.spatial.distance import cdist

from .dataset import DataSet
from .distance import build_distance_matrix
from .errors import InvalidSpecError
from .mst import build_mst
from .rng import SplitMix64
from .transitive import forest_cut, order_k_distance

SEEDING_METHODS = ("plus_plus", "random_partition", "random_sample")


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    restarts: int = 10
    max_iterations: int = 100
    seeding_method: str = "plus_plus"
    rng_seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise InvalidSpecError("k must be >= 1")
        if self.restarts < 1:
            raise InvalidSpecError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise InvalidSpecError("max_iterations must be >= 1")
        if self.seeding_method not in SEEDING_METHODS:
            raise InvalidSpecError(
                f"unknown seeding method {self.seeding_method!r}, expected one of {SEEDING_METHODS}"
            )


_SEEDING_JSON = {
    "plus_plus": "PlusPlus",
    "random_partition": "RandomPartition",
    "random_sample": "RandomSample",
}


@dataclass(frozen=True)
class ClusterAssignment:
    """Result of one clustering run.

    centroids live in whatever row space the algorithm worked in (raw
    coordinates, distance rows, or transitive rows); tree-cut clusterings
    carry no centroids and report inertia 0.
    """

    labels: np.ndarray
    k: int
    inertia: float
    iterations: int
    restarts_used: int
    config: KMeansConfig | None = None
    centroids: np.ndarray | None = None

    def __post_init__(self):
        labels = np.ascontiguousarray(np.asarray(self.labels, dtype=np.int64))
        if labels.ndim != 1 or labels.size < 1:
            raise InvalidSpecError("labels must be a non-empty vector")
        if len(np.unique(labels)) != self.k or labels.min() < 0 or labels.max() >= self.k:
            raise InvalidSpecError("every cluster in {0..k-1} must be non-empty")
        if not np.isfinite(self.inertia) or self.inertia < 0.0:
            raise InvalidSpecError("inertia must be finite and >= 0")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        if self.centroids is not None:
            cen = np.ascontiguousarray(np.asarray(self.centroids, dtype=np.float64))
            if cen.ndim != 2 or cen.shape[0] != self.k:
                raise InvalidSpecError("centroids must be a k x m matrix")
            cen.setflags(write=False)
            object.__setattr__(self, "centroids", cen)

    def to_json_dict(self) -> dict:
        cfg = None
        if self.config is not None:
            cfg = {
                "k": self.config.k,
                "restarts": self.config.restarts,
                "maxIterations": self.config.max_iterations,
                "seedingMethod": _SEEDING_JSON[self.config.seeding_method],
                "rngSeed": self.config.rng_seed,
            }
        return {
            "labels": [int(v) for v in self.labels],
            "k": self.k,
            "inertia": self.inertia,
            "iterations": self.iterations,
            "restartsUsed": self.restarts_used,
            "config": cfg,
        }


def kmeans(rows: np.ndarray, cfg: KMeansConfig) -> ClusterAssignment:
    """Lloyd's algorithm on row vectors, best of cfg.restarts runs.

    Each restart draws its own RNG stream split off cfg.rng_seed, runs to
    an exact assignment fixpoint (or max_iterations), and the run with the
    lowest inertia wins; ties go to the earlier restart. Empty clusters are
    repaired by reseeding the centroid at the sample currently farthest
    from its own centroid (among clusters that can spare a point).
    """
    X = np.ascontiguousarray(np.asarray(rows, dtype=np.float64))
    if X.ndim != 2 or X.shape[0] < 1:
        raise InvalidSpecError("rows must be a non-empty n x m matrix")
    if not np.all(np.isfinite(X)):
        raise InvalidSpecError("rows must be finite")
    if cfg.k > X.shape[0]:
        raise InvalidSpecError(f"k = {cfg.k} exceeds sample count {X.shape[0]}")
    master = SplitMix64(cfg.rng_seed)
    best = None
    for _ in range(cfg.restarts):
        run = _lloyd(X, cfg, master.spawn())
        if best is None or run[2] < best[2]:
            best = run
    labels, centroids, inertia, iterations = best
    return ClusterAssignment(
        labels=labels,
        k=cfg.k,
        inertia=inertia,
        iterations=iterations,
        restarts_used=cfg.restarts,
        config=cfg,
        centroids=centroids,
    )


def _lloyd(X, cfg, rng):
    n, k = X.shape[0], cfg.k
    centroids = _seed_centroids(X, cfg, rng)
    labels = None
    prev_inertia = np.inf
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        d2 = cdist(X, centroids, "sqeuclidean")
        new_labels = d2.argmin(axis=1)
        counts = np.bincount(new_labels, minlength=k)
        for c in np.nonzero(counts == 0)[0]:
            own = d2[np.arange(n), new_labels]
            donors = np.nonzero(counts[new_labels] >= 2)[0]
            far = donors[int(np.argmax(own[donors]))]
            centroids[c] = X[far]
            counts[new_labels[far]] -= 1
            new_labels[far] = c
            counts[c] = 1
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            centroids[c] = X[labels == c].mean(axis=0)
        inertia = float(((X - centroids[labels]) ** 2).sum())
        assert inertia <= prev_inertia * (1.0 + 1e-9) + 1e-12, "inertia increased"
        prev_inertia = inertia
    inertia = float(((X - centroids[labels]) ** 2).sum())
    return labels, centroids, inertia, iterations


def _seed_centroids(X, cfg, rng):
    n, k = X.shape[0], cfg.k
    if cfg.seeding_method == "random_sample":
        # Plain Forgy seeding: k distinct samples drawn uniformly. The
        # classic default of older K-means implementations; single-run
        # results quoted in the literature typically assume it.
        chosen: list[int] = []
        while len(chosen) < k:
            idx = rng.randint(n)
            if idx not in chosen:
                chosen.append(idx)
        return X[np.array(chosen, dtype=np.int64)].copy()
    if cfg.seeding_method == "random_partition":
        labels = np.array([rng.randint(k) for _ in range(n)], dtype=np.int64)
        counts = np.bincount(labels, minlength=k)
        for c in np.nonzero(counts == 0)[0]:
            donor_cluster = int(np.argmax(counts))
            moved = int(np.nonzero(labels == donor_cluster)[0][0])
            labels[moved] = c
            counts[donor_cluster] -= 1
            counts[c] = 1
        return np.stack([X[labels == c].mean(axis=0) for c in range(k)])
    # k-means++: each next center drawn with probability proportional to
    # squared distance from the nearest center already chosen.
    centroids = np.empty((k, X.shape[1]))
    centroids[0] = X[rng.randint(n)]
    d2 = ((X - centroids[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(d2.sum())
        if total > 0.0:
            idx = int(np.searchsorted(np.cumsum(d2), rng.uniform() * total, side="right"))
            idx = min(idx, n - 1)
        else:
            idx = rng.randint(n)
        centroids[c] = X[idx]
        np.minimum(d2, ((X - centroids[c]) ** 2).sum(axis=1), out=d2)
    return centroids


def _resolve_config(cfg: KMeansConfig | None, k: int) -> KMeansConfig:
    if cfg is None:
        return KMeansConfig(k=k)
    if cfg.k != k:
        return replace(cfg, k=k)
    return cfg


def cluster_transitive(
    data: DataSet,
    k: int,
    cfg: KMeansConfig | None = None,
    metric: str = "euclidean",
    order: int | None = None,
) -> ClusterAssignment:
    """Full pipeline: distances, spanning tree, transitive matrix, K-means
    on its rows; sample i inherits the cluster of row i.

    order bounds the transitive path length; None means the full closure.
    """
    cfg = _resolve_config(cfg, k)
    E = build_distance_matrix(data.points, metric)
    T = forest_cut(E) if order is None else order_k_distance(E, order)
    return kmeans(T.values, cfg)


def cluster_duality_raw(
    data: DataSet, k: int, cfg: KMeansConfig | None = None, metric: str = "euclidean"
) -> ClusterAssignment:
    """K-means on rows of the raw distance matrix (no transitive step)."""
    cfg = _resolve_config(cfg, k)
    E = build_distance_matrix(data.points, metric)
    return kmeans(E.values, cfg)


def cluster_kmeans_baseline(data: DataSet, k: int, cfg: KMeansConfig | None = None) -> ClusterAssignment:
    """Plain K-means on the original coordinates."""
    return kmeans(data.points, _resolve_config(cfg, k))


def cluster_hierarchical_mstcut(data: DataSet, c: int, metric: str = "euclidean") -> ClusterAssignment:
    """Cut the c-1 largest spanning-tree edges; components become clusters.

    Edge size is compared by the same (weight, endpoints) order used to
    build the tree, so the cut set is unique. Components are labeled in
    order of first appearance by sample index. No centroids are produced
    and inertia is reported as 0.
    """
    n = data.n
    if not 1 <= c <= n:
        raise InvalidSpecError(f"cluster count {c} must be in [1, {n}]")
    tree = build_mst(build_distance_matrix(data.points, metric))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in tree.edges[: n - c]:  # canonical ascending order: keep all but the c-1 largest
        parent[find(int(v))] = find(int(u))
    label_of_root: dict[int, int] = {}
    labels = np.empty(n, dtype=np.int64)
    for i in range(n):
        r = find(i)
        if r not in label_of_root:
            label_of_root[r] = len(label_of_root)
        labels[i] = label_of_root[r]
    return ClusterAssignment(
        labels=labels, k=c, inertia=0.0, iterations=0, restarts_used=0, config=None, centroids=None
    )
