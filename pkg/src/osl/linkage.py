"""Single-linkage dendrogram built from the Euclidean minimum spanning tree.

Point indices are 0-based positions in the input array. They are the stable
identifiers used for tie-breaking between clusters of equal size.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ._kernels import prim_mst
from .errors import InvalidInputError

__all__ = [
    "Dendrogram",
    "Partition",
    "as_points",
    "build_dendrogram",
    "clusters_at_radius",
    "order_clusters",
]


def as_points(points) -> np.ndarray:
    """Validate ``points`` and return them as a float64 array of shape (n, D).

    A 1-D input is read as n points on the real line.
    """
    X = np.asarray(points, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise InvalidInputError(f"points must be a 2-D array, got shape {X.shape}")
    if X.shape[0] < 1:
        raise InvalidInputError("point set is empty")
    if X.shape[1] < 1:
        raise InvalidInputError("points must have at least one coordinate")
    if not np.all(np.isfinite(X)):
        bad = int(np.flatnonzero(~np.all(np.isfinite(X), axis=1))[0])
        raise InvalidInputError(f"point {bad} has a non-finite coordinate")
    return X


@dataclass(frozen=True)
class Dendrogram:
    """Single-linkage merge structure of a point set.

    Attributes
    ----------
    n : int
        Number of points.
    edges : ndarray of shape (n - 1, 2)
        Minimum spanning tree edges sorted by nondecreasing length.
    weights : ndarray of shape (n - 1,)
        Edge lengths, i.e. the merge radii.
    levels : ndarray
        Distinct merge radii, strictly increasing, with ``levels[0] == 0``.
    level_end : ndarray
        ``level_end[k]`` is the number of edges of length ``<= levels[k]``.
    """

    n: int
    edges: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    levels: np.ndarray
    level_end: np.ndarray = field(repr=False)

    @property
    def n_clusters(self) -> np.ndarray:
        """Cluster count M(rho_k) at every level."""
        return self.n - self.level_end

    @cached_property
    def merges(self) -> list[tuple[float, int, int]]:
        """Merge events ``(radius, a, b)`` in agglomeration order.

        ``a`` and ``b`` name each merged component by its smallest point index.
        """
        parent = list(range(self.n))
        low = list(range(self.n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        out = []
        for (u, v), w in zip(self.edges.tolist(), self.weights.tolist()):
            ru, rv = find(u), find(v)
            a, b = sorted((low[ru], low[rv]))
            out.append((w, a, b))
            parent[rv] = ru
            low[ru] = a
        return out

    def level_index(self, r: float) -> int:
        """Index k of the level with ``levels[k] <= r < levels[k + 1]``."""
        if not r >= 0:
            raise InvalidInputError(f"radius must be nonnegative, got {r}")
        return int(np.searchsorted(self.levels, r, side="right")) - 1


@dataclass(frozen=True)
class Partition:
    """Connected components of the threshold graph at ``radius``.

    ``labels[i]`` is the component of point i; components are numbered by
    their smallest point index, so component 0 contains point 0.
    """

    labels: np.ndarray
    radius: float

    @cached_property
    def clusters(self) -> list[np.ndarray]:
        order = np.argsort(self.labels, kind="stable")
        bounds = np.flatnonzero(np.diff(self.labels[order])) + 1
        return np.split(order, bounds)

    def __len__(self) -> int:
        return int(self.labels.max()) + 1


def build_dendrogram(points) -> Dendrogram:
    """Build the single-linkage dendrogram of ``points``.

    Parameters
    ----------
    points : array_like of shape (n, D) or (n,)
        Input coordinates. Must be finite and nonempty.

    Returns
    -------
    Dendrogram
        Duplicate points produce zero-length merges which fall into the
        first level, ``levels[0] == 0``.
    """
    X = as_points(points)
    n = X.shape[0]
    # Prim on the complete graph: O(n^2) time, O(n) memory
    edges, weights = prim_mst(X)
    order = np.argsort(weights, kind="stable")
    edges, weights = edges[order], weights[order]
    levels = np.unique(weights)
    if levels.size == 0 or levels[0] > 0:
        levels = np.concatenate(([0.0], levels))
    level_end = np.searchsorted(weights, levels, side="right")
    for a in (edges, weights, levels, level_end):
        a.setflags(write=False)
    return Dendrogram(n=n, edges=edges, weights=weights, levels=levels, level_end=level_end)


def _component_labels(n: int, edges: np.ndarray) -> np.ndarray:
    if len(edges) == 0:
        return np.arange(n)
    graph = coo_matrix(
        (np.ones(len(edges)), (edges[:, 0], edges[:, 1])), shape=(n, n)
    )
    _, raw = connected_components(graph, directed=False)
    # renumber so components appear in order of their smallest member
    _, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.intp)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[inverse]


def clusters_at_radius(d: Dendrogram, r: float) -> Partition:
    """Partition of the points into r-connected components.

    Two points share a cluster when a chain of points joins them with every
    step of length at most ``r``.
    """
    k = d.level_index(r)
    labels = _component_labels(d.n, d.edges[: d.level_end[k]])
    return Partition(labels=labels, radius=float(r))


def order_clusters(p: Partition) -> list[np.ndarray]:
    """Clusters sorted by size (descending), ties broken by smallest member."""
    sizes = np.bincount(p.labels)
    # label numbering already follows smallest-member order
    order = np.lexsort((np.arange(len(sizes)), -sizes))
    clusters = p.clusters
    return [clusters[k] for k in order]
