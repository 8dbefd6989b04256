"""Scoring against ground truth and Monte Carlo campaigns.

Algorithms are referred to by name (``"osl"``, ``"sl"``) or passed as a
callable ``f(sample, m) -> labels`` where ``sample`` is a
:class:`~osl.datagen.LabeledSample`. Two reference stubs, ``"truth"`` and
``"one-cluster"``, are registered to sanity-check the harness.
"""
from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .datagen import LabeledSample, MixtureModel, sample, stream
from .errors import InvalidInputError, NoValidRadiusError, OSLError
from .linkage import build_dendrogram
from .selectors import Clustering, assign, osl_select, sl_select

__all__ = [
    "ALGORITHMS",
    "AriStats",
    "RiskEstimate",
    "adjusted_rand_index",
    "default_workers",
    "estimate_risk",
    "estimate_risks",
    "exact_recovery",
    "subsample_bench",
    "write_bench_csv",
    "write_risk_csv",
]


def _labels_of(clustering) -> np.ndarray:
    if isinstance(clustering, Clustering):
        return clustering.labels
    return np.asarray(clustering)


def exact_recovery(truth, clustering) -> bool:
    """Whether every true group lies entirely inside its own predicted cluster.

    ``truth`` uses 0 for outliers and 1..M for groups; ``clustering`` is a
    :class:`Clustering` or a label vector with 0 for the outlier pool. How
    outliers are labeled is ignored. Groups without any sampled point are
    trivially recovered.
    """
    truth = np.asarray(truth)
    labels = _labels_of(clustering)
    if truth.shape != labels.shape or truth.ndim != 1:
        raise InvalidInputError(f"truth and labels differ in shape: {truth.shape} vs {labels.shape}")
    mask = truth > 0
    t, p = truth[mask], labels[mask]
    if t.size == 0:
        return True
    if np.any(p == 0):
        return False
    order = np.lexsort((p, t))
    t, p = t[order], p[order]
    starts = np.flatnonzero(np.r_[True, t[1:] != t[:-1]])
    ends = np.r_[starts[1:], t.size] - 1
    # each group must carry a single label...
    if np.any(p[starts] != p[ends]):
        return False
    # ...and no two groups may share one
    return np.unique(p[starts]).size == starts.size


def adjusted_rand_index(a, b) -> float:
    """Adjusted Rand index between two labelings of the same points.

    Labels are arbitrary integers; an outlier label 0 is just one more class.
    Returns 1.0 when both labelings are the same trivial partition.
    """
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.shape != b.shape:
        raise InvalidInputError(f"label vectors differ in length: {a.size} vs {b.size}")
    n = a.size
    if n < 2:
        return 1.0
    _, ia = np.unique(a, return_inverse=True)
    _, ib = np.unique(b, return_inverse=True)
    table = np.zeros((ia.max() + 1, ib.max() + 1), dtype=np.int64)
    np.add.at(table, (ia, ib), 1)

    def comb2(x):
        x = np.asarray(x, dtype=np.float64)
        return float(np.sum(x * (x - 1) / 2))

    index = comb2(table)
    sa, sb = comb2(table.sum(axis=1)), comb2(table.sum(axis=0))
    expected = sa * sb / (n * (n - 1) / 2)
    top = (sa + sb) / 2
    if top == expected:
        return 1.0
    return (index - expected) / (top - expected)


def _osl(s: LabeledSample, m: int) -> np.ndarray:
    d = build_dendrogram(s.points)
    return assign(d, osl_select(d, m).radius, m).labels


def _sl(s: LabeledSample, m: int) -> np.ndarray:
    d = build_dendrogram(s.points)
    return assign(d, sl_select(d, m), m).labels


def _truth(s: LabeledSample, m: int) -> np.ndarray:
    return s.truth.copy()


def _one_cluster(s: LabeledSample, m: int) -> np.ndarray:
    return np.ones(len(s), dtype=np.int64)


ALGORITHMS: dict[str, Callable[[LabeledSample, int], np.ndarray]] = {
    "osl": _osl,
    "sl": _sl,
    "truth": _truth,
    "one-cluster": _one_cluster,
}


def _resolve(algorithm):
    if callable(algorithm):
        return algorithm
    try:
        return ALGORITHMS[algorithm]
    except KeyError as exc:
        raise InvalidInputError(f"unknown algorithm {algorithm!r}") from exc


def default_workers() -> int:
    """Worker count from ``OSL_THREADS``, else the number of usable CPUs."""
    env = os.environ.get("OSL_THREADS")
    if env:
        try:
            v = int(env)
        except ValueError as exc:
            raise InvalidInputError(f"OSL_THREADS must be an integer, got {env!r}") from exc
        if v < 1:
            raise InvalidInputError("OSL_THREADS must be >= 1")
        return v
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _map(fn, items, workers):
    workers = default_workers() if workers is None else int(workers)
    if workers <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class RiskEstimate:
    """Share of replications in which some true group was not recovered."""

    replications: int
    failures: int

    @property
    def risk(self) -> float:
        return self.failures / self.replications

    @property
    def stderr(self) -> float:
        p = self.risk
        return math.sqrt(p * (1 - p) / self.replications)

    def __str__(self) -> str:
        return f"{self.risk:.3f} ({self.stderr:.3f})"


def estimate_risks(model: MixtureModel, algorithms: Sequence, m: int, n: int, B: int,
                   seed: int, workers: int | None = None) -> dict:
    """Risk of several algorithms evaluated on the same B samples.

    Replication ``b`` draws its sample from ``stream(seed, b)``, so the
    result does not depend on ``workers``. ``"osl"`` and ``"sl"`` share one
    dendrogram per sample. An algorithm that cannot produce a clustering
    (e.g. fewer than ``m`` distinct points for ``"sl"``) counts as a failure.
    """
    if int(B) != B or B < 1:
        raise InvalidInputError(f"B must be a positive integer, got {B!r}")
    names = list(algorithms)
    fns = [_resolve(a) for a in names]

    def one(b):
        try:
            s = sample(model, n, stream(seed, b))
        except OSLError as exc:
            raise type(exc)(f"replication {b}: {exc}") from exc
        dendro = None
        ok = []
        for name, fn in zip(names, fns):
            try:
                if name in ("osl", "sl"):
                    if dendro is None:
                        dendro = build_dendrogram(s.points)
                    r = osl_select(dendro, m).radius if name == "osl" else sl_select(dendro, m)
                    labels = assign(dendro, r, m).labels
                else:
                    labels = fn(s, m)
            except NoValidRadiusError:
                ok.append(False)
                continue
            ok.append(exact_recovery(s.truth, labels))
        return ok

    results = np.array(_map(one, range(int(B)), workers), dtype=bool).reshape(int(B), len(names))
    fails = (~results).sum(axis=0)
    return {name: RiskEstimate(int(B), int(f)) for name, f in zip(names, fails)}


def estimate_risk(model: MixtureModel, algorithm, m: int, n: int, B: int, seed: int,
                  workers: int | None = None) -> RiskEstimate:
    """Monte Carlo estimate of the clustering risk of one algorithm."""
    return estimate_risks(model, [algorithm], m, n, B, seed, workers)[algorithm]


@dataclass(frozen=True)
class AriStats:
    """ARI per subsample replication; NaN marks a skipped replication."""

    ari: np.ndarray
    seconds: np.ndarray = field(repr=False)
    n_sub: int

    @property
    def valid(self) -> np.ndarray:
        return self.ari[~np.isnan(self.ari)]

    @property
    def skipped(self) -> int:
        return int(np.isnan(self.ari).sum())

    @property
    def mean(self) -> float:
        v = self.valid
        return float(v.mean()) if v.size else math.nan

    @property
    def sd(self) -> float:
        v = self.valid
        return float(v.std(ddof=1)) if v.size > 1 else math.nan

    @property
    def stderr(self) -> float:
        v = self.valid
        return self.sd / math.sqrt(v.size) if v.size > 1 else math.nan

    @property
    def mean_seconds(self) -> float:
        t = self.seconds[~np.isnan(self.seconds)]
        return float(t.mean()) if t.size else math.nan


def subsample_bench(dataset: LabeledSample, algorithm, m: int, B: int, fraction: float = 0.75,
                    seed: int = 0, workers: int | None = None) -> AriStats:
    """ARI of ``algorithm`` over B random subsamples without replacement.

    Each replication keeps ``floor(fraction * n)`` points (in their original
    order) and compares the clustering with the restricted truth. Only the
    clustering call is timed. Replications whose subsample is smaller than
    ``m`` are skipped and reported as NaN.
    """
    if not 0 < fraction <= 1:
        raise InvalidInputError(f"fraction must lie in (0, 1], got {fraction}")
    if int(B) != B or B < 1:
        raise InvalidInputError(f"B must be a positive integer, got {B!r}")
    fn = _resolve(algorithm)
    n = len(dataset)
    k = int(math.floor(fraction * n))

    def one(b):
        if k < m:
            return math.nan, math.nan
        idx = np.sort(stream(seed, b).choice(n, size=k, replace=False))
        sub = LabeledSample(points=dataset.points[idx], truth=dataset.truth[idx])
        t0 = time.perf_counter()
        try:
            labels = fn(sub, m)
        except NoValidRadiusError:
            return math.nan, math.nan
        dt = time.perf_counter() - t0
        return adjusted_rand_index(sub.truth, labels), dt

    out = np.array(_map(one, range(int(B)), workers), dtype=float).reshape(int(B), 2)
    return AriStats(ari=out[:, 0], seconds=out[:, 1], n_sub=k)


RISK_FIELDS = ["scenario", "algorithm", "n", "epsilon", "delta_case", "m", "B",
               "failures", "risk", "stderr"]
BENCH_FIELDS = ["dataset", "algorithm", "m", "B", "fraction", "n_sub", "valid",
                "mean_ari", "sd_ari", "stderr_ari"]
BENCH_REP_FIELDS = ["dataset", "algorithm", "replication", "n_sub", "ari"]


def _fmt(v):
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(round(v, 12))
    return v


def _write(rows: Iterable[dict], fields, path_or_file):
    if hasattr(path_or_file, "write"):
        w = csv.DictWriter(path_or_file, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: _fmt(row[k]) for k in fields})
        return
    with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
        _write(rows, fields, fh)


def write_risk_csv(rows: Iterable[dict], path_or_file) -> None:
    """One row per (scenario, algorithm, n, epsilon, delta_case) cell."""
    _write(rows, RISK_FIELDS, path_or_file)


def write_bench_csv(rows: Iterable[dict], path_or_file, per_replication: bool = False) -> None:
    """Bench summary rows, or one row per replication."""
    _write(rows, BENCH_REP_FIELDS if per_replication else BENCH_FIELDS, path_or_file)
