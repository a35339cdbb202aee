"""Ultrametric clustering via transitive distances on minimum spanning trees."""

from .clustering import (
    ClusterAssignment,
    KMeansConfig,
    cluster_duality_raw,
    cluster_hierarchical_mstcut,
    cluster_kmeans_baseline,
    cluster_transitive,
    kmeans,
)
from .dataset import DataSet, SyntheticSpec, generate, load_csv, write_csv
from .distance import DistanceMatrix, build_distance_matrix
from .errors import CsvFormatError, InvalidSpecError, TransclustError
from .evaluation import (
    BenchmarkResult,
    ConsistencyResult,
    EvalReport,
    check_consistency,
    duality_difference,
    error_rate,
    scaling_benchmark,
    separation_stats,
)
from .figures import emit_heatmap, emit_scatter
from .mst import SpanningTree, build_mst, mst_path_max, path_max_matrix
from .rng import SplitMix64
from .transitive import (
    TransitiveMatrix,
    check_ultrametric,
    floyd_minimax,
    forest_cut,
    order_k_distance,
    path_max,
)

__version__ = "0.1.0"

__all__ = [
    "DataSet",
    "SyntheticSpec",
    "generate",
    "load_csv",
    "write_csv",
    "DistanceMatrix",
    "build_distance_matrix",
    "TransclustError",
    "CsvFormatError",
    "InvalidSpecError",
    "SpanningTree",
    "build_mst",
    "mst_path_max",
    "path_max_matrix",
    "SplitMix64",
    "TransitiveMatrix",
    "check_ultrametric",
    "floyd_minimax",
    "forest_cut",
    "order_k_distance",
    "path_max",
    "KMeansConfig",
    "ClusterAssignment",
    "kmeans",
    "cluster_transitive",
    "cluster_duality_raw",
    "cluster_kmeans_baseline",
    "cluster_hierarchical_mstcut",
    "EvalReport",
    "error_rate",
    "ConsistencyResult",
    "check_consistency",
    "duality_difference",
    "separation_stats",
    "BenchmarkResult",
    "scaling_benchmark",
    "emit_scatter",
    "emit_heatmap",
    "__version__",
]
