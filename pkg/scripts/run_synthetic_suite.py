#!/usr/bin/env python3
"""Synthetic experiment suite: shape recovery, duality, order-k ratios.

Four sections, each printed as a small table:

  shapes    transitive clustering on two-moon, rings, and multi-scale
            sets over several seeds, against the tree-cutting baseline
  duality   disagreement between K-means on raw coordinates and on
            distance-matrix rows, on overlapping Gaussian mixtures
  order-k   inter/intra distance ratio of the order-k transitive
            distance on a two-moon set, k = 2..6
  figures   (with --figures DIR) scatter plots with the spanning tree
            and a transitive-distance heatmap for each shape

Usage:
    python3 scripts/run_synthetic_suite.py
    python3 scripts/run_synthetic_suite.py --seeds 10 --figures out/
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from transclust.clustering import cluster_hierarchical_mstcut, cluster_transitive
from transclust.dataset import SyntheticSpec, generate
from transclust.distance import build_distance_matrix
from transclust.evaluation import duality_difference, error_rate, separation_stats
from transclust.figures import emit_heatmap, emit_scatter
from transclust.mst import build_mst
from transclust.transitive import forest_cut, order_k_distance

SHAPE_SPECS = (
    ("two_moon", (25, 25)),
    ("rings", (40, 70)),
    ("multi_scale", (14, 40, 40)),
)

DUALITY_SPEC = dict(
    shape="gaussian_mixture",
    samples_per_cluster=(67, 67, 66),
    cluster_std=0.07,
    separation=0.22,
)


def section_shapes(seeds: int) -> None:
    print("== shape recovery: transitive vs. tree cutting ==")
    print(f"{'shape':<14} {'seeds':>5} {'transitive':>11} {'tree-cut':>9}")
    for shape, samples in SHAPE_SPECS:
        k = len(samples)
        errs_t, errs_h = [], []
        for seed in range(seeds):
            data = generate(SyntheticSpec(shape=shape, samples_per_cluster=samples, rng_seed=seed))
            errs_t.append(error_rate(cluster_transitive(data, k).labels, data.labels).error_rate)
            errs_h.append(error_rate(cluster_hierarchical_mstcut(data, k).labels, data.labels).error_rate)
        print(f"{shape:<14} {seeds:>5} {np.mean(errs_t):>11.4f} {np.mean(errs_h):>9.4f}")
    print()


def section_duality(seeds: int) -> None:
    print("== K-means duality: coordinates vs. distance-matrix rows ==")
    diffs = [
        duality_difference(generate(SyntheticSpec(rng_seed=seed, **DUALITY_SPEC)), 3)
        for seed in range(seeds)
    ]
    print(f"{'seeds':>5} {'mean':>8} {'min':>8} {'max':>8}")
    print(f"{seeds:>5} {np.mean(diffs):>8.4f} {min(diffs):>8.4f} {max(diffs):>8.4f}")
    print()


def section_order_k(seed: int) -> None:
    print("== order-k transitive distance: inter/intra ratio on two-moon ==")
    data = generate(SyntheticSpec(shape="two_moon", samples_per_cluster=(25, 25), rng_seed=seed))
    E = build_distance_matrix(data.points)
    print(f"{'k':>3} {'max_intra':>10} {'min_inter':>10} {'ratio':>7}")
    for k in range(2, 7):
        max_intra, min_inter = separation_stats(order_k_distance(E, k).values, data.labels)
        print(f"{k:>3} {max_intra:>10.4f} {min_inter:>10.4f} {min_inter / max_intra:>7.3f}")
    print()


def section_figures(out_dir: Path, seed: int) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for shape, samples in SHAPE_SPECS:
        data = generate(SyntheticSpec(shape=shape, samples_per_cluster=samples, rng_seed=seed))
        E = build_distance_matrix(data.points)
        tree = build_mst(E)
        labels = cluster_transitive(data, len(samples)).labels
        emit_scatter(data, labels, str(out_dir / f"{shape}_scatter.svg"), tree=tree)
        emit_heatmap(forest_cut(E, tree), str(out_dir / f"{shape}_heatmap.svg"))
        print(f"wrote {out_dir}/{shape}_scatter.svg and {shape}_heatmap.svg")
    print()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=5, help="seeds per shape experiment")
    parser.add_argument("--duality-seeds", type=int, default=20)
    parser.add_argument("--order-seed", type=int, default=0)
    parser.add_argument("--figures", default=None, metavar="DIR",
                        help="also write scatter/heatmap SVGs to this directory")
    args = parser.parse_args(argv)

    section_shapes(args.seeds)
    section_duality(args.duality_seeds)
    section_order_k(args.order_seed)
    if args.figures:
        section_figures(Path(args.figures), args.order_seed)
    return 0


if __name__ == "__main__":
    sys.exit(main())
