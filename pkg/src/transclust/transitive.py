"""Transitive (minimax path) distances over a base distance matrix.

The order-k transitive distance between two samples is the smallest, over
all connecting paths of at most k vertices, of the largest base distance
along the path. At k = n the result is the subdominant ultrametric, and by
the cut structure of the minimum spanning tree it equals the largest edge
on the unique tree path, which is what ``forest_cut`` exploits.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from . import _kernels
from .distance import DistanceMatrix
from .errors import InvalidSpecError
from .mst import SpanningTree, build_mst

SOURCE_METHODS = ("forest_cut", "path_max", "floyd_minimax", "order_k")


@dataclass(frozen=True)
class TransitiveMatrix:
    """Dense symmetric matrix of order-k transitive distances.

    order is the path-length bound k (equal to n for the full closure);
    source_method records which routine produced the values. All four
    builders preserve symmetry, finiteness and the zero diagonal exactly
    (they only compare and copy entries of a valid base matrix), so they
    construct with ``validate=False``; external values get the full scan.
    """

    values: np.ndarray
    order: int
    source_method: str
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        v = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise InvalidSpecError("transitive matrix must be square and non-empty")
        if validate:
            if not np.all(np.isfinite(v)) or v.min() < 0.0:
                raise InvalidSpecError("transitive distances must be finite and non-negative")
            if np.any(np.diag(v) != 0.0):
                raise InvalidSpecError("diagonal must be exactly zero")
            if not np.array_equal(v, v.T):
                raise InvalidSpecError("transitive matrix must be exactly symmetric")
        if self.order < 2:
            raise InvalidSpecError("order must be >= 2")
        if self.source_method not in SOURCE_METHODS:
            raise InvalidSpecError(f"unknown source method {self.source_method!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _matrix_of(dmat) -> np.ndarray:
    if isinstance(dmat, (DistanceMatrix, TransitiveMatrix)):
        return dmat.values
    # Raw arrays are validated once on entry; the builders then preserve
    # the invariants structurally.
    return DistanceMatrix(np.asarray(dmat, dtype=np.float64)).values


def forest_cut(dmat, tree: SpanningTree | None = None) -> TransitiveMatrix:
    """Full transitive distances via minimum-spanning-tree cuts.

    Conceptually: cut the largest remaining tree edge, assign its weight to
    every pair the cut separates, and recurse into both sides. The kernel
    runs the equivalent bottom-up form (merge components in ascending edge
    order), which fills each cell exactly once in O(n^2).
    """
    values = _matrix_of(dmat)
    n = values.shape[0]
    if tree is None:
        tree = build_mst(values)
    elif tree.n != n:
        raise InvalidSpecError("tree size does not match matrix size")
    if n == 1:
        return TransitiveMatrix(np.zeros((1, 1)), 2, "forest_cut", validate=False)
    out = _kernels.forest_fill(tree.edges[:, 0], tree.edges[:, 1], tree.weights, n)
    return TransitiveMatrix(out, max(n, 2), "forest_cut", validate=False)


def path_max(dmat, tree: SpanningTree | None = None) -> TransitiveMatrix:
    """Full transitive distances as largest edges on tree paths.

    Independent of forest_cut: walks the tree from every source instead of
    merging cuts. The two must agree exactly; tests lean on that.
    """
    values = _matrix_of(dmat)
    n = values.shape[0]
    if tree is None:
        tree = build_mst(values)
    elif tree.n != n:
        raise InvalidSpecError("tree size does not match matrix size")
    if n == 1:
        return TransitiveMatrix(np.zeros((1, 1)), 2, "path_max", validate=False)
    ptr, adj, wts = tree.adjacency_csr()
    out = _kernels.path_max_all_pairs(n, ptr, adj, wts)
    return TransitiveMatrix(out, max(n, 2), "path_max", validate=False)


def floyd_minimax(dmat) -> TransitiveMatrix:
    """Full transitive distances by minimax relaxation over all pivots.

    O(n^3); kept as the slow reference route with no tree involved.
    """
    D = _matrix_of(dmat).copy()
    n = D.shape[0]
    for h in range(n):
        np.minimum(D, np.maximum.outer(D[:, h], D[h, :]), out=D)
    return TransitiveMatrix(D, max(n, 2), "floyd_minimax", validate=False)


def order_k_distance(dmat, k: int) -> TransitiveMatrix:
    """Transitive distances restricted to paths of at most k vertices.

    Computed as repeated (min, max)-semiring products with the base matrix:
    paths of <= 2 vertices are the base distances, and each product admits
    one more vertex. Orders beyond n are capped at n, where the value
    equals the full closure.
    """
    E = _matrix_of(dmat)
    n = E.shape[0]
    if k < 2:
        raise InvalidSpecError("order must be >= 2 (2 means the direct edge)")
    D = E.copy()
    for _ in range(min(k, n) - 2):
        D = _minimax_product(D, E)
    return TransitiveMatrix(D, min(k, max(n, 2)), "order_k", validate=False)


def _minimax_product(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """(min, max)-semiring product, blocked to bound temporary memory."""
    n = A.shape[0]
    out = np.empty_like(A)
    rows = max(1, int(8e6) // max(1, n * n))
    for lo in range(0, n, rows):
        hi = min(n, lo + rows)
        block = np.maximum(A[lo:hi, :, None], B[None, :, :])
        out[lo:hi] = block.min(axis=1)
    # The zero diagonal of B makes the product reflexive, so shorter paths
    # are already included; the explicit minimum just defends against a
    # caller passing a matrix with a nonzero diagonal.
    np.minimum(out, A, out=out)
    return out


def check_ultrametric(matrix, tol: float = 0.0):
    """Return the first triple (i, j, k) violating the strong triangle
    inequality M[i,j] <= max(M[i,k], M[k,j]) + tol, or None if ultrametric.

    The scan is lexicographic in (i, j, k), so the witness is deterministic.
    """
    M = _matrix_of(matrix)
    if tol < 0.0:
        raise InvalidSpecError("tolerance must be >= 0")
    n = M.shape[0]
    for i in range(n):
        maxmat = np.maximum(M[i, :][:, None], M)  # [k, j] = max(M[i,k], M[k,j])
        slack = M[i] - maxmat.min(axis=0)
        violating = slack > tol
        if violating.any():
            j = int(np.argmax(violating))
            k = int(np.argmax(M[i, j] - maxmat[:, j] > tol))
            return (i, j, k)
    return None
