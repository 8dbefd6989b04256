"""Radius selection rules on a single-linkage dendrogram.

Two rules are provided. ``sl_select`` is the classical one: cut where the
dendrogram still has at least ``m`` clusters. ``osl_select`` keeps only the
``m`` largest clusters at each level and picks the level where the smallest
of them is as large as possible; every other point goes to the outlier pool.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import mth_largest_per_level
from .errors import InvalidInputError, NoValidRadiusError
from .linkage import Dendrogram, build_dendrogram, clusters_at_radius

__all__ = [
    "Clustering",
    "SelectionTrace",
    "assign",
    "osl",
    "osl_select",
    "single_linkage",
    "sl_select",
]


@dataclass(frozen=True)
class SelectionTrace:
    """Per-level audit of an OSL selection.

    Attributes
    ----------
    radii : ndarray
        Candidate levels.
    n_clusters : ndarray
        Cluster count at every level.
    mth_size : ndarray
        Size of the m-th largest cluster at every level, 0 when there are
        fewer than m clusters.
    argmax : ndarray
        Indices of the levels attaining the maximum of ``mth_size``.
    radius : float
        The selected radius, the largest level in ``argmax``.
    """

    m: int
    radii: np.ndarray
    n_clusters: np.ndarray
    mth_size: np.ndarray
    argmax: np.ndarray
    radius: float

    def rows(self):
        """Yield ``(radius, n_clusters, mth_size)`` per level."""
        for r, c, s in zip(self.radii.tolist(), self.n_clusters.tolist(), self.mth_size.tolist()):
            yield r, c, s


@dataclass(frozen=True)
class Clustering:
    """Labels in ``{0, 1, ..., m}``; 0 marks the outlier pool.

    Label k >= 1 is the k-th largest cluster at ``radius`` (ties go to the
    cluster holding the smaller point index).
    """

    m: int
    labels: np.ndarray
    radius: float

    @property
    def outliers(self) -> np.ndarray:
        return np.flatnonzero(self.labels == 0)

    def sizes(self) -> np.ndarray:
        """Cluster sizes for labels 1..m (0 for unused labels)."""
        return np.bincount(self.labels, minlength=self.m + 1)[1:]


def _check_m(d: Dendrogram, m) -> int:
    if int(m) != m or m < 1:
        raise InvalidInputError(f"m must be a positive integer, got {m!r}")
    if m > d.n:
        raise InvalidInputError(f"m={m} exceeds the number of points n={d.n}")
    return int(m)


def osl_select(d: Dendrogram, m: int) -> SelectionTrace:
    """Select the largest level maximizing the size of the m-th largest cluster."""
    m = _check_m(d, m)
    sizes = mth_largest_per_level(d.n, d.edges, d.level_end, m)
    best = np.flatnonzero(sizes == sizes.max())
    return SelectionTrace(
        m=m,
        radii=d.levels,
        n_clusters=d.n_clusters,
        mth_size=sizes,
        argmax=best,
        radius=float(d.levels[best[-1]]),
    )


def sl_select(d: Dendrogram, m: int) -> float:
    """Largest level at which the dendrogram still has at least ``m`` clusters."""
    m = _check_m(d, m)
    ok = np.flatnonzero(d.n_clusters >= m)
    if ok.size == 0:
        raise NoValidRadiusError(
            f"only {d.n_clusters[0]} distinct points, cannot form {m} clusters"
        )
    return float(d.levels[ok[-1]])


def assign(d: Dendrogram, r: float, m: int) -> Clustering:
    """Label the m largest clusters at radius ``r`` as 1..m, the rest as 0."""
    m = _check_m(d, m)
    part = clusters_at_radius(d, r)
    sizes = np.bincount(part.labels)
    # component numbering follows smallest member, so arange breaks ties
    order = np.lexsort((np.arange(len(sizes)), -sizes))
    relabel = np.zeros(len(sizes), dtype=np.int64)
    top = order[:m]
    relabel[top] = np.arange(1, len(top) + 1)
    return Clustering(m=m, labels=relabel[part.labels], radius=float(r))


def osl(points, m: int) -> Clustering:
    """Cluster ``points`` with the outlier-robust rule."""
    d = build_dendrogram(points)
    return assign(d, osl_select(d, m).radius, m)


def single_linkage(points, m: int) -> Clustering:
    """Cluster ``points`` with the classical rule.

    At the selected radius there can be more than ``m`` clusters (ties in
    merge radii); the extra ones land in the outlier pool like in ``osl``.
    """
    d = build_dendrogram(points)
    return assign(d, sl_select(d, m), m)
