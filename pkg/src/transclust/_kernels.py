"""Numba kernels for the O(n^2) tree routines.

Kept free of Python objects so they compile under nopython mode; cache=True
persists the compiled code next to the package, so repeat runs skip JIT.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def prim_dense(E):
    """Minimum spanning tree of a dense weight matrix, rooted at vertex 0.

    Ties are broken by the lexicographic key (weight, min endpoint, max
    endpoint), which makes the tree unique even with repeated weights.
    Returns parent[v] for every vertex, -1 for the root.
    """
    n = E.shape[0]
    in_tree = np.zeros(n, np.bool_)
    best = np.empty(n, np.float64)
    parent = np.full(n, -1, np.int64)
    in_tree[0] = True
    for v in range(1, n):
        best[v] = E[0, v]
        parent[v] = 0
    for _ in range(n - 1):
        pick = -1
        for v in range(n):
            if in_tree[v]:
                continue
            if pick == -1:
                pick = v
            elif best[v] < best[pick]:
                pick = v
            elif best[v] == best[pick]:
                av = parent[v] if parent[v] < v else v
                bv = v if parent[v] < v else parent[v]
                ap = parent[pick] if parent[pick] < pick else pick
                bp = pick if parent[pick] < pick else parent[pick]
                if av < ap or (av == ap and bv < bp):
                    pick = v
        in_tree[pick] = True
        for v in range(n):
            if in_tree[v]:
                continue
            w = E[pick, v]
            # Under the tie-break key, a new edge (pick, v) beats the held
            # edge (parent[v], v) on equal weight iff pick < parent[v].
            if w < best[v] or (w == best[v] and pick < parent[v]):
                best[v] = w
                parent[v] = pick
    return parent


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def mirror_upper(D):
    """Copy the strict upper triangle onto the lower one, tile by tile.

    Equivalent to D[j, i] = D[i, j] for all i < j, but blocked so both the
    reads and the row-contiguous writes stay cache-resident on matrices far
    larger than last-level cache.
    """
    n = D.shape[0]
    B = 128
    for ib in range(0, n, B):
        i_end = min(ib + B, n)
        for jb in range(ib, n, B):
            j_end = min(jb + B, n)
            for j in range(jb, j_end):
                hi = i_end if i_end <= j else j
                for i in range(ib, hi):
                    D[j, i] = D[i, j]


@njit(cache=True)
def forest_fill(eu, ev, ew, n):
    """All-pairs bottleneck distances from tree edges sorted ascending.

    Processing edges from smallest to largest, the edge that first joins the
    components of i and j is exactly the largest edge of the forest cut that
    separates them, so writing its weight to every newly joined pair fills
    each off-diagonal cell once.

    To keep those n(n-1) writes streaming instead of scattered, vertices are
    first relabeled in dendrogram leaf order: merges only ever concatenate
    whole member lists, so every component occupies a contiguous interval of
    the final order and each merge fills two rectangular blocks. A final
    pass maps the block matrix back to original vertex numbering.
    """
    m = eu.shape[0]
    # Pass 1: leaf order via append-only member lists.
    parent = np.arange(n)
    tail = np.arange(n)
    nxt = np.full(n, -1, np.int64)
    head = np.arange(n)
    for idx in range(m):
        ra = _find(parent, eu[idx])
        rb = _find(parent, ev[idx])
        parent[rb] = ra
        nxt[tail[ra]] = head[rb]
        tail[ra] = tail[rb]
    pos = np.empty(n, np.int64)
    v = head[_find(parent, 0)]
    p = 0
    while v != -1:
        pos[v] = p
        p += 1
        v = nxt[v]
    # Pass 2: in position space every component is an interval [lo, hi) and
    # each merge joins two adjacent intervals, so the pair writes become two
    # dense blocks of the permuted matrix.
    P = np.zeros((n, n), np.float64)
    parent2 = np.arange(n)
    lo = np.empty(n, np.int64)
    hi = np.empty(n, np.int64)
    for u in range(n):
        lo[u] = pos[u]
        hi[u] = pos[u] + 1
    for idx in range(m):
        ra = _find(parent2, eu[idx])
        rb = _find(parent2, ev[idx])
        w = ew[idx]
        a0, a1 = lo[ra], hi[ra]
        b0, b1 = lo[rb], hi[rb]
        if b0 < a0:  # keep the block above the diagonal: row-major writes only
            a0, a1, b0, b1 = b0, b1, a0, a1
        for i in range(a0, a1):
            for j in range(b0, b1):
                P[i, j] = w
        parent2[rb] = ra
        lo[ra] = a0
        hi[ra] = b1
    # The strided half of each block is cheaper as one cache-blocked mirror.
    mirror_upper(P)
    # Undo the permutation. Reading P sequentially and scattering writes
    # into one D row keeps the loads streaming; scattered stores retire
    # from the store buffer without stalling the way random loads would.
    inv = np.empty(n, np.int64)
    for u in range(n):
        inv[pos[u]] = u
    D = np.empty((n, n), np.float64)
    for i in range(n):
        u = inv[i]
        for p in range(n):
            D[u, inv[p]] = P[i, p]
    return D


@njit(cache=True)
def path_max_all_pairs(n, ptr, adj, wts):
    """All-pairs maximum edge weight along tree paths, by per-source DFS.

    The tree is given in CSR form: neighbors of u are adj[ptr[u]:ptr[u+1]]
    with matching edge weights in wts.
    """
    out = np.zeros((n, n), np.float64)
    stack = np.empty(n, np.int64)
    for s in range(n):
        visited = np.zeros(n, np.bool_)
        visited[s] = True
        top = 0
        stack[top] = s
        top = 1
        while top > 0:
            top -= 1
            u = stack[top]
            for e in range(ptr[u], ptr[u + 1]):
                v = adj[e]
                if not visited[v]:
                    visited[v] = True
                    m = out[s, u] if out[s, u] > wts[e] else wts[e]
                    out[s, v] = m
                    stack[top] = v
                    top += 1
    return out
