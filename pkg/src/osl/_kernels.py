"""Compiled inner loops for the dendrogram build and the level scan."""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def prim_mst(X):
    n, dim = X.shape
    m = max(n - 1, 0)
    edges = np.empty((m, 2), dtype=np.int64)
    weights = np.empty(m, dtype=np.float64)
    if n <= 1:
        return edges, weights
    outside = np.ones(n, dtype=np.bool_)
    best = np.full(n, np.inf)
    parent = np.zeros(n, dtype=np.int64)
    cur = 0
    outside[0] = False
    for k in range(m):
        nxt = -1
        nxt_d = np.inf
        for j in range(n):
            if not outside[j]:
                continue
            s = 0.0
            for c in range(dim):
                t = X[j, c] - X[cur, c]
                s += t * t
            if s < best[j]:
                best[j] = s
                parent[j] = cur
            # first index wins ties
            if best[j] < nxt_d:
                nxt_d = best[j]
                nxt = j
        edges[k, 0] = parent[nxt]
        edges[k, 1] = nxt
        weights[k] = np.sqrt(nxt_d)
        outside[nxt] = False
        cur = nxt
    return edges, weights


@njit(cache=True, nogil=True)
def _find(parent, i):
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        nxt = parent[i]
        parent[i] = root
        i = nxt
    return root


@njit(cache=True, nogil=True)
def _fenwick_add(tree, i, v):
    n = tree.shape[0] - 1
    while i <= n:
        tree[i] += v
        i += i & (-i)


@njit(cache=True, nogil=True)
def _fenwick_kth(tree, k):
    # smallest position p with prefix_sum(p) >= k
    n = tree.shape[0] - 1
    pos = 0
    step = 1
    while step * 2 <= n:
        step *= 2
    while step > 0:
        if pos + step <= n and tree[pos + step] < k:
            pos += step
            k -= tree[pos]
        step //= 2
    return pos + 1


@njit(cache=True, nogil=True)
def mth_largest_per_level(n, edges, level_end, m):
    """Size of the m-th largest cluster after each level (0 if fewer than m)."""
    parent = np.arange(n)
    size = np.ones(n, dtype=np.int64)
    tree = np.zeros(n + 1, dtype=np.int64)
    for _ in range(n):
        _fenwick_add(tree, 1, 1)
    count = n
    out = np.zeros(level_end.shape[0], dtype=np.int64)
    e = 0
    for k in range(level_end.shape[0]):
        while e < level_end[k]:
            ru = _find(parent, edges[e, 0])
            rv = _find(parent, edges[e, 1])
            e += 1
            if ru == rv:
                continue
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            _fenwick_add(tree, size[ru], -1)
            _fenwick_add(tree, size[rv], -1)
            size[ru] += size[rv]
            parent[rv] = ru
            _fenwick_add(tree, size[ru], 1)
            count -= 1
        if count >= m:
            out[k] = _fenwick_kth(tree, count - m + 1)
    return out
