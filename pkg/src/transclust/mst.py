"""Minimum spanning trees over distance matrices.

Edge weights are compared by the lexicographic key
(weight, min endpoint, max endpoint). The key is a strict total order on
edges, so the minimum spanning tree is unique and any correct algorithm
using the same order must produce the identical edge set; repeated
distances (which do occur, e.g. on grids) cannot make results drift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .distance import DistanceMatrix
from .errors import InvalidSpecError


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree on vertices {0..n-1}.

    edges is an (n-1, 2) int array with each row (u, v), u < v, and rows
    sorted ascending by (weight, u, v); weights holds the matching edge
    weights. The canonical order makes equal trees array-equal.
    """

    n: int
    edges: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        edges = np.ascontiguousarray(np.asarray(self.edges, dtype=np.int64))
        weights = np.ascontiguousarray(np.asarray(self.weights, dtype=np.float64))
        if self.n < 1:
            raise InvalidSpecError("tree needs at least one vertex")
        if edges.shape != (self.n - 1, 2) or weights.shape != (self.n - 1,):
            raise InvalidSpecError("a spanning tree on n vertices has exactly n-1 edges")
        if edges.size and (edges.min() < 0 or edges.max() >= self.n):
            raise InvalidSpecError("edge endpoint out of range")
        if np.any(edges[:, 0] >= edges[:, 1]):
            raise InvalidSpecError("edges must be stored as (u, v) with u < v")
        order = np.lexsort((edges[:, 1], edges[:, 0], weights))
        if not np.array_equal(order, np.arange(self.n - 1)):
            raise InvalidSpecError("edges must be sorted by (weight, u, v)")
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            ru, rv = find(int(u)), find(int(v))
            if ru == rv:
                raise InvalidSpecError("edges contain a cycle")
            parent[rv] = ru
        edges.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", weights)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def adjacency_csr(self):
        """Neighbor lists in CSR form: (ptr, adjacent vertex, edge weight)."""
        deg = np.zeros(self.n + 1, dtype=np.int64)
        for u, v in self.edges:
            deg[u + 1] += 1
            deg[v + 1] += 1
        ptr = np.cumsum(deg)
        adj = np.empty(2 * (self.n - 1), dtype=np.int64)
        wts = np.empty(2 * (self.n - 1), dtype=np.float64)
        fill = ptr[:-1].copy()
        for (u, v), w in zip(self.edges, self.weights):
            adj[fill[u]] = v
            wts[fill[u]] = w
            fill[u] += 1
            adj[fill[v]] = u
            wts[fill[v]] = w
            fill[v] += 1
        return ptr, adj, wts


def build_mst(dmat: DistanceMatrix | np.ndarray) -> SpanningTree:
    """Build the unique minimum spanning tree of a distance matrix."""
    values = dmat.values if isinstance(dmat, DistanceMatrix) else np.asarray(dmat, dtype=np.float64)
    n = values.shape[0]
    if n == 1:
        return SpanningTree(1, np.empty((0, 2), dtype=np.int64), np.empty(0))
    parent = _kernels.prim_dense(values)
    v = np.arange(1, n)
    p = parent[1:]
    lo = np.minimum(p, v)
    hi = np.maximum(p, v)
    w = values[p, v]
    order = np.lexsort((hi, lo, w))
    return SpanningTree(n, np.stack([lo[order], hi[order]], axis=1), w[order])


def mst_path_max(tree: SpanningTree, i: int, j: int) -> float:
    """Largest edge weight on the unique tree path between i and j."""
    if not (0 <= i < tree.n and 0 <= j < tree.n):
        raise InvalidSpecError("vertex index out of range")
    if i == j:
        return 0.0
    ptr, adj, wts = tree.adjacency_csr()
    best = np.zeros(tree.n)
    visited = np.zeros(tree.n, dtype=bool)
    visited[i] = True
    stack = [i]
    while stack:
        u = stack.pop()
        if u == j:
            return float(best[j])
        for e in range(ptr[u], ptr[u + 1]):
            v = adj[e]
            if not visited[v]:
                visited[v] = True
                best[v] = max(best[u], wts[e])
                stack.append(v)
    raise InvalidSpecError("vertices are not connected")  # unreachable on a valid tree


def path_max_matrix(tree: SpanningTree) -> np.ndarray:
    """All-pairs path maxima over the tree, as a dense symmetric matrix."""
    if tree.n == 1:
        return np.zeros((1, 1))
    ptr, adj, wts = tree.adjacency_csr()
    return _kernels.path_max_all_pairs(tree.n, ptr, adj, wts)
