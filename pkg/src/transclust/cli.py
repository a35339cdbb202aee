"""Command-line entry point for the transitive clustering pipeline.

Subcommands: generate, cluster, evaluate, heatmap, scatter, bench and
duality. Exit codes: 0 on success, 1 on usage errors (bad flags or
inconsistent combinations), 2 on data errors (missing files, malformed
CSV, invalid parameter values). All randomness flows from --seed, so the
same argv produces byte-identical JSON output, except for the measured
wall-time fields an evaluation report carries by design.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, replace

from .clustering import (
    KMeansConfig,
    cluster_duality_raw,
    cluster_hierarchical_mstcut,
    cluster_kmeans_baseline,
    cluster_transitive,
)
from .dataset import SHAPES, SyntheticSpec, generate, load_csv, write_csv
from .distance import METRICS, build_distance_matrix
from .errors import TransclustError
from .evaluation import duality_difference, error_rate, scaling_benchmark
from .figures import emit_heatmap, emit_scatter
from .mst import build_mst
from .transitive import forest_cut, order_k_distance

METHODS = ("transitive", "kmeans", "hierarchical", "duality-raw")

# Mixture regime for the duality experiment: overlapping enough that the
# row-space and point-space partitions can disagree on a few samples.
_DUALITY_SAMPLES = (67, 67, 66)
_DUALITY_STD = 0.07
_DUALITY_SEPARATION = 0.22


@dataclass(frozen=True)
class RunConfig:
    """Echo of one CLI invocation; serialized into JSON reports."""

    command: str
    input: str | None = None
    output: str | None = None
    label_col: int | None = None
    k: int | None = None
    metric: str = "euclidean"
    rng_seed: int = 0
    method: str = "transitive"
    order_k: int | None = None
    mst_overlay: bool = False
    threads: int = 1
    sizes: tuple[int, ...] | None = None
    repeats: int = 3
    shape: str | None = None
    samples: tuple[int, ...] | None = None
    noise_count: int = 0

    def to_json_dict(self) -> dict:
        raw = asdict(self)
        out = {}
        for key, value in raw.items():
            parts = key.split("_")
            camel = parts[0] + "".join(p.title() for p in parts[1:])
            out[camel] = list(value) if isinstance(value, tuple) else value
        return out


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); usage errors are 1 here
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="transclust", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, *, with_input=True):
        if with_input:
            p.add_argument("--input", required=True, help="input CSV path")
            p.add_argument("--label-col", type=int, default=None,
                           help="index of the label column (negative counts from the end)")
        p.add_argument("--metric", choices=METRICS, default="euclidean")
        p.add_argument("--seed", type=int, default=0, help="master RNG seed")
        p.add_argument("--threads", type=int, default=None,
                       help="worker thread cap (default: TRANSCLUST_THREADS or available cores)")
        p.add_argument("--out", default=None, help="output path (default: stdout for JSON)")

    p = sub.add_parser("generate", help="write a synthetic labeled dataset as CSV")
    p.add_argument("--shape", choices=SHAPES, required=True)
    p.add_argument("--samples", required=True, help="comma-separated per-cluster counts, e.g. 25,25")
    p.add_argument("--noise-count", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", required=True)

    for name in ("cluster", "evaluate"):
        p = sub.add_parser(name, help=f"{name} a dataset with one of the methods")
        add_common(p)
        p.add_argument("--k", type=int, required=True, help="number of clusters")
        p.add_argument("--method", choices=METHODS, default="transitive")
        p.add_argument("--order", type=int, default=None,
                       help="transitive order bound (default: full closure)")

    p = sub.add_parser("heatmap", help="render a transitive distance matrix (.svg or .pgm)")
    add_common(p)
    p.add_argument("--order", type=int, default=None,
                   help="transitive order bound (default: full closure)")
    p.set_defaults(out_required=True)

    p = sub.add_parser("scatter", help="render a 2-d dataset as an SVG scatter plot")
    add_common(p)
    p.add_argument("--mst", action="store_true", help="overlay the spanning tree edges")
    p.set_defaults(out_required=True)

    p = sub.add_parser("bench", help="run the scaling benchmark, print CSV plus slope")
    p.add_argument("--sizes", default="500,1000,2000,4000", help="comma-separated sample counts")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=None, help="also write the result as JSON")

    p = sub.add_parser("duality", help="measure K-means row/point duality on seeded mixtures")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--repeats", type=int, default=20, help="number of seeded datasets")
    p.add_argument("--seed", type=int, default=0, help="seed of the first dataset")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=None)

    return parser


def _resolve_threads(flag: int | None) -> int:
    if flag is None:
        env = os.environ.get("TRANSCLUST_THREADS", "").strip()
        if env:
            try:
                flag = int(env)
            except ValueError as exc:
                raise TransclustError(f"TRANSCLUST_THREADS must be an integer, got {env!r}") from exc
    if flag is None:
        flag = os.cpu_count() or 1
    if flag < 1:
        raise TransclustError(f"thread count must be >= 1, got {flag}")
    try:  # cap the kernel thread pool; harmless if the layer is absent
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            import numba

            numba.set_num_threads(min(flag, numba.config.NUMBA_NUM_THREADS))
    except Exception:
        pass
    return flag


def _parse_int_tuple(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise TransclustError(f"{what} must be comma-separated integers, got {text!r}") from exc
    if not values:
        raise TransclustError(f"{what} must not be empty")
    return values


def _emit_json(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _run_method(cfg: RunConfig, data):
    kcfg = KMeansConfig(k=cfg.k, rng_seed=cfg.rng_seed)
    if cfg.method == "transitive":
        return cluster_transitive(data, cfg.k, kcfg, metric=cfg.metric, order=cfg.order_k)
    if cfg.method == "kmeans":
        return cluster_kmeans_baseline(data, cfg.k, kcfg)
    if cfg.method == "duality-raw":
        return cluster_duality_raw(data, cfg.k, kcfg, metric=cfg.metric)
    return cluster_hierarchical_mstcut(data, cfg.k, metric=cfg.metric)


def run(argv) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)

    try:
        cfg = _to_config(args)
        _dispatch(cfg, args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (TransclustError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"transclust: error: {exc}", file=sys.stderr)
        return 2
    return 0


def _to_config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        output=getattr(args, "out", None),
        label_col=getattr(args, "label_col", None),
        k=getattr(args, "k", None),
        metric=getattr(args, "metric", "euclidean"),
        rng_seed=getattr(args, "seed", 0),
        method=getattr(args, "method", "transitive"),
        order_k=getattr(args, "order", None),
        mst_overlay=getattr(args, "mst", False),
        threads=_resolve_threads(getattr(args, "threads", None)),
        sizes=_parse_int_tuple(args.sizes, "--sizes") if hasattr(args, "sizes") else None,
        repeats=getattr(args, "repeats", 3),
        shape=getattr(args, "shape", None),
        samples=_parse_int_tuple(args.samples, "--samples") if hasattr(args, "samples") else None,
        noise_count=getattr(args, "noise_count", 0),
    )


def _dispatch(cfg: RunConfig, args) -> None:
    if getattr(args, "out_required", False) and cfg.output is None:
        raise _UsageError(f"transclust {cfg.command}: error: --out is required")
    handler = {
        "generate": _cmd_generate,
        "cluster": _cmd_cluster,
        "evaluate": _cmd_evaluate,
        "heatmap": _cmd_heatmap,
        "scatter": _cmd_scatter,
        "bench": _cmd_bench,
        "duality": _cmd_duality,
    }[cfg.command]
    handler(cfg)


def _cmd_generate(cfg: RunConfig) -> None:
    spec = SyntheticSpec(
        shape=cfg.shape,
        samples_per_cluster=cfg.samples,
        noise_count=cfg.noise_count,
        rng_seed=cfg.rng_seed,
    )
    write_csv(generate(spec), cfg.output)


def _cmd_cluster(cfg: RunConfig) -> None:
    data = load_csv(cfg.input, label_column=cfg.label_col)
    assignment = _run_method(cfg, data)
    _emit_json(assignment.to_json_dict(), cfg.output)


def _cmd_evaluate(cfg: RunConfig) -> None:
    if cfg.label_col is None:
        raise _UsageError("transclust evaluate: error: --label-col is required to evaluate")
    data = load_csv(cfg.input, label_column=cfg.label_col)
    t0 = time.perf_counter()
    assignment = _run_method(cfg, data)
    elapsed_ms = (time.perf_counter() - t0) * 1e3
    report = replace(
        error_rate(assignment.labels, data.labels),
        wall_time_ms={"cluster": elapsed_ms},
        config_echo=cfg.to_json_dict(),
    )
    _emit_json(report.to_json_dict(), cfg.output)


def _cmd_heatmap(cfg: RunConfig) -> None:
    data = load_csv(cfg.input, label_column=cfg.label_col)
    E = build_distance_matrix(data.points, cfg.metric)
    T = forest_cut(E) if cfg.order_k is None else order_k_distance(E, cfg.order_k)
    emit_heatmap(T, cfg.output)


def _cmd_scatter(cfg: RunConfig) -> None:
    data = load_csv(cfg.input, label_column=cfg.label_col)
    labels = data.labels if data.labels is not None else [0] * data.n
    tree = build_mst(build_distance_matrix(data.points, cfg.metric)) if cfg.mst_overlay else None
    emit_scatter(data, labels, cfg.output, tree=tree)


def _cmd_bench(cfg: RunConfig) -> None:
    template = SyntheticSpec(
        shape="gaussian_mixture", samples_per_cluster=(1, 1, 1, 1), rng_seed=cfg.rng_seed
    )
    result = scaling_benchmark(cfg.sizes, template, repeats=cfg.repeats)
    sys.stdout.write(result.to_csv())
    sys.stdout.write(f"slope,{result.slope:.4f}\n")
    if cfg.output is not None:
        _emit_json(result.to_json_dict(), cfg.output)


def _cmd_duality(cfg: RunConfig) -> None:
    differences = []
    for offset in range(cfg.repeats):
        spec = SyntheticSpec(
            shape="gaussian_mixture",
            samples_per_cluster=_DUALITY_SAMPLES,
            rng_seed=cfg.rng_seed + offset,
            cluster_std=_DUALITY_STD,
            separation=_DUALITY_SEPARATION,
        )
        differences.append(duality_difference(generate(spec), cfg.k))
    payload = {
        "differences": [round(d, 6) for d in differences],
        "mean": round(sum(differences) / len(differences), 6),
        "configEcho": cfg.to_json_dict(),
    }
    _emit_json(payload, cfg.output)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
