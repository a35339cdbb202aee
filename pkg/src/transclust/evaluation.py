"""Scoring against ground truth, consistency checking, duality measurement,
and the scaling benchmark."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from .clustering import KMeansConfig, cluster_duality_raw, cluster_kmeans_baseline, kmeans
from .dataset import DataSet, SyntheticSpec, generate
from .distance import build_distance_matrix
from .errors import InvalidSpecError
from .mst import build_mst
from .rng import SplitMix64
from .transitive import forest_cut


@dataclass(frozen=True)
class EvalReport:
    """Error rate plus the confusion matrix after optimal label matching.

    confusion[t, p] counts samples with truth label t whose predicted label
    was mapped to t' = p by the matching, so agreements sit on the diagonal.
    matched_permutation[p] is the truth label assigned to predicted label p.
    wall_time_ms and config_echo are filled by pipeline drivers.
    """

    error_rate: float
    confusion: np.ndarray
    matched_permutation: tuple[int, ...]
    wall_time_ms: dict = field(default_factory=dict)
    config_echo: dict | None = None

    def to_json_dict(self) -> dict:
        return {
            "errorRate": self.error_rate,
            "confusion": [[int(v) for v in row] for row in self.confusion],
            "matchedPermutation": list(self.matched_permutation),
            "wallTimeMs": {k: round(float(v), 3) for k, v in self.wall_time_ms.items()},
            "configEcho": self.config_echo,
        }


def _as_contiguous_labels(raw, name: str) -> np.ndarray:
    lab = np.asarray(raw, dtype=np.int64)
    if lab.ndim != 1 or lab.size < 1:
        raise InvalidSpecError(f"{name} must be a non-empty label vector")
    k = int(lab.max()) + 1
    if lab.min() < 0 or len(np.unique(lab)) != k:
        raise InvalidSpecError(f"{name} must use every label in a contiguous range {{0..k-1}}")
    return lab


def error_rate(predicted, truth) -> EvalReport:
    """Fraction mislabeled after the optimal one-to-one label matching.

    The matching maximizes total agreement over the confusion matrix
    (solved exactly as an assignment problem, never greedily), so the
    result is invariant under any permutation of predicted labels.
    """
    pred = _as_contiguous_labels(predicted, "predicted")
    tru = _as_contiguous_labels(truth, "truth")
    if pred.shape != tru.shape:
        raise InvalidSpecError(f"length mismatch: {pred.size} predicted vs {tru.size} truth")
    k = int(max(pred.max(), tru.max())) + 1
    conf = np.zeros((k, k), dtype=np.int64)
    np.add.at(conf, (tru, pred), 1)
    rows, cols = linear_sum_assignment(conf, maximize=True)
    perm = np.empty(k, dtype=np.int64)
    perm[cols] = rows
    matched = conf[:, np.argsort(perm)]
    agreement = int(conf[rows, cols].sum())
    return EvalReport(
        error_rate=1.0 - agreement / pred.size,
        confusion=matched,
        matched_permutation=tuple(int(p) for p in perm),
    )


@dataclass(frozen=True)
class ConsistencyResult:
    consistent: bool
    # On failure: (cluster, its largest internal tree edge, offending outside sample).
    witness: tuple[int, float, int] | None = None

    def __bool__(self) -> bool:
        return self.consistent


def check_consistency(data: DataSet, metric: str = "euclidean") -> ConsistencyResult:
    """Decide whether the ground-truth labeling is consistent with the metric.

    A labeling is consistent iff for every cluster C, every split of C is
    narrower than C's gap to the rest: equivalently, the largest edge of
    C's own minimum spanning tree is strictly smaller than d(y, C) for
    every outside sample y. The equivalence of the two forms is proved in
    docs/consistency_check.md; tests also cross-check it by enumerating
    all bipartitions of small clusters.
    """
    if data.labels is None:
        raise InvalidSpecError("consistency check needs ground-truth labels")
    E = build_distance_matrix(data.points, metric).values
    labels = data.labels
    for c in range(int(labels.max()) + 1):
        inside = np.nonzero(labels == c)[0]
        outside = np.nonzero(labels != c)[0]
        if inside.size >= 2:
            sub = build_mst(E[np.ix_(inside, inside)])
            internal = float(sub.weights[-1])
        else:
            internal = 0.0
        if outside.size:
            gaps = E[np.ix_(outside, inside)].min(axis=1)
            bad = np.nonzero(gaps <= internal)[0]
            if bad.size:
                return ConsistencyResult(False, (c, internal, int(outside[bad[0]])))
    return ConsistencyResult(True, None)


def duality_difference(data: DataSet, k: int, cfg: KMeansConfig | None = None) -> float:
    """Disagreement fraction between K-means on raw coordinates and K-means
    on rows of the raw distance matrix, after optimal label matching."""
    base = cluster_kmeans_baseline(data, k, cfg)
    rows = cluster_duality_raw(data, k, cfg)
    return error_rate(rows.labels, base.labels).error_rate


def separation_stats(values: np.ndarray, labels) -> tuple[float, float]:
    """(largest intra-cluster value, smallest inter-cluster value) of a
    distance matrix under a labeling; inf for the inter side when k = 1."""
    lab = _as_contiguous_labels(labels, "labels")
    same = lab[:, None] == lab[None, :]
    off_diag = ~np.eye(lab.size, dtype=bool)
    intra = values[same & off_diag]
    inter = values[~same]
    max_intra = float(intra.max()) if intra.size else 0.0
    min_inter = float(inter.min()) if inter.size else float("inf")
    return max_intra, min_inter


@dataclass(frozen=True)
class BenchmarkResult:
    """Per-stage median timings and the log-log slope of the transitive
    pipeline (distance + mst + forest_cut; K-means is reported but not
    part of the fit)."""

    rows: tuple[tuple[int, str, float], ...]
    slope: float
    sizes: tuple[int, ...]
    repeats: int

    def to_csv(self) -> str:
        lines = ["n,stage,median_ms"]
        lines += [f"{n},{stage},{ms:.3f}" for n, stage, ms in self.rows]
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "rows": [[n, stage, round(ms, 3)] for n, stage, ms in self.rows],
            "slope": round(self.slope, 4),
            "sizes": list(self.sizes),
            "repeats": self.repeats,
        }

    def stage_ms(self, n: int, stage: str) -> float:
        for rn, rstage, ms in self.rows:
            if rn == n and rstage == stage:
                return ms
        raise KeyError((n, stage))


_BENCH_STAGES = ("distance", "mst", "forest_cut", "kmeans")


def scaling_benchmark(sizes, template: SyntheticSpec, repeats: int = 3) -> BenchmarkResult:
    """Time each pipeline stage at several sizes and fit the growth rate.

    The template's samples_per_cluster acts as cluster proportions and is
    rescaled to each requested n; every (size, repeat) cell gets its own
    dataset seed split off the template seed. Each size gets one untimed
    warmup run (the first also absorbs JIT compilation), and a buffer
    larger than the last-level cache is swept between stages so every
    stage starts cold at every size; without that, small problems run
    entirely in cache while large ones stream from memory, and the fitted
    exponent reports the cache cliff instead of the algorithm. The slope
    is fitted to the per-size medians, the same statistic the table
    reports. The K-means stage runs 2 restarts: enough to exercise the
    stage without drowning the O(n^2) signal it is excluded from anyway.
    """
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) < 3:
        raise InvalidSpecError("need at least 3 sizes to fit a slope")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InvalidSpecError("sizes must be strictly ascending")
    if repeats < 1:
        raise InvalidSpecError("repeats must be >= 1")
    k = len(template.samples_per_cluster)
    if sizes[0] < 2 * k:
        raise InvalidSpecError(f"smallest size {sizes[0]} too small for {k} clusters")

    master = SplitMix64(template.rng_seed)
    flush = np.ones(16_000_000)  # 128 MB scratch, swept to evict cached data

    timings: dict[tuple[int, str], list[float]] = {(n, s): [] for n in sizes for s in _BENCH_STAGES}
    for n in sizes:
        spec = replace(template, samples_per_cluster=_apportion(n, template))
        _run_stages(generate(replace(spec, rng_seed=master.next_u64())), flush)
        for _ in range(repeats):
            data = generate(replace(spec, rng_seed=master.next_u64()))
            for stage, ms in _run_stages(data, flush).items():
                timings[(n, stage)].append(ms)

    rows = tuple(
        (n, stage, float(np.median(timings[(n, stage)]))) for n in sizes for stage in _BENCH_STAGES
    )
    totals = [
        sum(ms for (rn, stage, ms) in rows if rn == n and stage in ("distance", "mst", "forest_cut"))
        for n in sizes
    ]
    slope = float(np.polyfit(np.log(sizes), np.log(totals), 1)[0])
    return BenchmarkResult(rows=rows, slope=slope, sizes=sizes, repeats=repeats)


def _apportion(n: int, template: SyntheticSpec) -> tuple[int, ...]:
    base = np.asarray(template.samples_per_cluster, dtype=np.float64)
    ideal = base * (n / base.sum())
    counts = np.maximum(1, np.floor(ideal).astype(np.int64))
    while counts.sum() < n:
        counts[int(np.argmax(ideal - counts))] += 1
    while counts.sum() > n:
        over = np.nonzero(counts > 1)[0]
        counts[over[int(np.argmin((ideal - counts)[over]))]] -= 1
    return tuple(int(c) for c in counts)


def _run_stages(data: DataSet, flush: np.ndarray | None = None) -> dict[str, float]:
    k = int(data.labels.max()) + 1 if data.labels is not None else 2

    def cold() -> float:
        if flush is not None:
            np.add(flush, 1.0, out=flush)
        return time.perf_counter()

    out = {}
    t0 = cold()
    E = build_distance_matrix(data.points)
    out["distance"] = (time.perf_counter() - t0) * 1e3
    t0 = cold()
    tree = build_mst(E)
    out["mst"] = (time.perf_counter() - t0) * 1e3
    t0 = cold()
    T = forest_cut(E, tree)
    out["forest_cut"] = (time.perf_counter() - t0) * 1e3
    t0 = cold()
    kmeans(T.values, KMeansConfig(k=k, restarts=2, rng_seed=0))
    out["kmeans"] = (time.perf_counter() - t0) * 1e3
    return out
