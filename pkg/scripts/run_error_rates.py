#!/usr/bin/env python3
"""Error rates of the four methods on the bundled real datasets.

Prints one row per (dataset, method). The transitive method reports the
modal error over single-start runs with uniform sample seeding (see the
acceptance suite for why the modal outcome, not the minimum-inertia one,
is the reproduction target); the baselines use the default configuration
with multiple restarts. Ionosphere rows appear only when the file exists
(fetch it with scripts/fetch_uci.py).

Usage:
    python3 scripts/run_error_rates.py
    python3 scripts/run_error_rates.py --seeds 50
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from transclust.clustering import (
    KMeansConfig,
    cluster_duality_raw,
    cluster_hierarchical_mstcut,
    cluster_kmeans_baseline,
    cluster_transitive,
)
from transclust.dataset import load_csv
from transclust.evaluation import error_rate

_DATA_DIR = Path(__file__).resolve().parents[1] / "data"

DATASETS = (
    ("iris", 4, 3),
    ("ionosphere", 34, 2),
)


def modal_transitive_error(data, k: int, seeds: int) -> float:
    errs = []
    for seed in range(seeds):
        cfg = KMeansConfig(k=k, restarts=1, seeding_method="random_sample", rng_seed=seed)
        labels = cluster_transitive(data, k, cfg).labels
        errs.append(round(error_rate(labels, data.labels).error_rate, 4))
    return Counter(errs).most_common(1)[0][0]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=25,
                        help="single-start runs for the transitive modal protocol")
    args = parser.parse_args(argv)

    print(f"{'dataset':<12} {'method':<14} {'error_rate':>10}  protocol")
    for name, label_column, k in DATASETS:
        path = _DATA_DIR / f"{name}.csv"
        if not path.exists():
            print(f"{name:<12} {'-':<14} {'-':>10}  skipped: {path} missing "
                  f"(python3 scripts/fetch_uci.py {name})")
            continue
        data = load_csv(path, label_column=label_column)
        rows = [
            ("transitive", modal_transitive_error(data, k, args.seeds),
             f"modal of {args.seeds} single starts"),
            ("kmeans", error_rate(cluster_kmeans_baseline(data, k).labels, data.labels).error_rate,
             "best of 10 restarts, seed 0"),
            ("duality-raw", error_rate(cluster_duality_raw(data, k).labels, data.labels).error_rate,
             "best of 10 restarts, seed 0"),
            ("hierarchical", error_rate(cluster_hierarchical_mstcut(data, k).labels, data.labels).error_rate,
             "deterministic tree cut"),
        ]
        for method, err, protocol in rows:
            print(f"{name:<12} {method:<14} {err:>10.4f}  {protocol}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
