"""Labeled samples from mixtures of uniform groups plus diffuse outliers.

A :class:`MixtureModel` draws each point from the outlier law with
probability ``epsilon`` and from group ``i`` with probability
``(1 - epsilon) * weights[i]``. Group points are uniform on their support
(area for 2-D sets, arc length for curves). Outliers never land on a group
support; they are rejection-sampled against all of them.

Random streams
--------------
All sampling goes through :func:`stream`, which derives a Philox4x64
counter-based generator from ``(seed, index)`` with
``numpy.random.SeedSequence(seed, spawn_key=(index,))``. Replication ``b``
of an experiment uses ``stream(seed, b)`` so results do not depend on the
order or the thread on which replications run.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache
from typing import ClassVar, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.spatial import cKDTree

from .errors import DegenerateModelError, InvalidInputError

__all__ = [
    "Annulus",
    "Box",
    "GaussianOutliers",
    "LabeledSample",
    "MixtureModel",
    "PointMass",
    "SineCurve",
    "UniformOutliers",
    "build_model",
    "circles_model",
    "contains",
    "example2_model",
    "gaussian_noise_sine_model",
    "interval",
    "min_gap",
    "sample",
    "sine_highdim_model",
    "sine_model",
    "squares_model",
    "stream",
    "validate_gaps",
]

REJECTION_CAP = 1_000_000

DELTAS = {
    "squares": {"easy": 0.35, "tricky": 0.07},
    "circles": {"easy": 2.6, "tricky": 1.6},
    "sine": {"easy": 1.18, "tricky": 0.76},
}


def stream(seed: int, index: int | None = None) -> np.random.Generator:
    """Philox generator for ``seed``, or for sub-stream ``index`` of it."""
    key = () if index is None else (int(index),)
    ss = np.random.SeedSequence(int(seed), spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))


def _as_batch(x, dim: int) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x2 = x[None, :] if single else x
    if x2.ndim != 2 or x2.shape[1] != dim:
        raise InvalidInputError(f"expected points of dimension {dim}, got shape {x.shape}")
    return x2, single


class _Support:
    kind: ClassVar[str]
    intrinsic_dim: ClassVar[float]

    def contains(self, x):
        x2, single = _as_batch(x, self.dim)
        out = self._contains(x2)
        return bool(out[0]) if single else out

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        for k, v in asdict(self).items():
            d[k] = list(v) if isinstance(v, tuple) else v
        return d


@dataclass(frozen=True)
class Box(_Support):
    """Axis-aligned box ``[lo, hi]``. Zero-width sides are allowed."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]
    kind: ClassVar[str] = "box"

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(float(v) for v in self.lo))
        object.__setattr__(self, "hi", tuple(float(v) for v in self.hi))
        if len(self.lo) != len(self.hi) or any(a > b for a, b in zip(self.lo, self.hi)):
            raise InvalidInputError(f"invalid box {self.lo} .. {self.hi}")

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def intrinsic_dim(self) -> int:
        return sum(a < b for a, b in zip(self.lo, self.hi))

    def _contains(self, x):
        return np.all((x >= self.lo) & (x <= self.hi), axis=1)

    def draw(self, rng, k):
        lo, hi = np.array(self.lo), np.array(self.hi)
        return lo + (hi - lo) * rng.random((k, self.dim))

    def mesh(self, h):
        axes = [np.linspace(a, b, max(2, int(math.ceil((b - a) / h)) + 1)) if b > a else np.array([a])
                for a, b in zip(self.lo, self.hi)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, self.dim)

    @property
    def volume(self) -> float:
        return float(np.prod(np.subtract(self.hi, self.lo)))


@dataclass(frozen=True)
class Annulus(_Support):
    """Planar ring ``inner <= |x - center| <= outer``."""

    center: tuple[float, float]
    inner: float
    outer: float
    kind: ClassVar[str] = "annulus"
    intrinsic_dim: ClassVar[int] = 2
    dim: ClassVar[int] = 2

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in self.center))
        if len(self.center) != 2 or not 0 <= self.inner < self.outer:
            raise InvalidInputError("annulus needs a 2-D center and 0 <= inner < outer")

    def _radius(self, x):
        return np.hypot(x[:, 0] - self.center[0], x[:, 1] - self.center[1])

    def _contains(self, x):
        r = self._radius(x)
        return (r >= self.inner) & (r <= self.outer)

    def draw(self, rng, k):
        # area-uniform radius
        r = np.sqrt(rng.uniform(self.inner**2, self.outer**2, k))
        a = rng.uniform(0, 2 * np.pi, k)
        return np.column_stack((self.center[0] + r * np.cos(a), self.center[1] + r * np.sin(a)))

    def mesh(self, h):
        radii = np.linspace(self.inner, self.outer, max(2, int(math.ceil((self.outer - self.inner) / h)) + 1))
        pts = []
        for r in radii:
            na = max(8, int(math.ceil(2 * np.pi * r / h)))
            a = np.linspace(0, 2 * np.pi, na, endpoint=False)
            pts.append(np.column_stack((self.center[0] + r * np.cos(a), self.center[1] + r * np.sin(a))))
        return np.concatenate(pts)

    @property
    def volume(self) -> float:
        return float(np.pi * (self.outer**2 - self.inner**2))


@dataclass(frozen=True)
class SineCurve(_Support):
    """Band ``{(t, amplitude sin t + v) : t in [t0, t1], |v| <= thickness / 2}``.

    With ``thickness == 0`` this is the curve itself, sampled uniformly in
    arc length. Coordinates beyond the first two are pinned to ``fill``.
    """

    t0: float = 0.0
    t1: float = 2 * np.pi
    amplitude: float = 1.0
    thickness: float = 0.0
    fill: tuple[float, ...] = ()
    kind: ClassVar[str] = "sine"
    tol: ClassVar[float] = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "fill", tuple(float(v) for v in self.fill))
        if not self.t0 < self.t1 or self.thickness < 0:
            raise InvalidInputError("sine curve needs t0 < t1 and thickness >= 0")

    @property
    def dim(self) -> int:
        return 2 + len(self.fill)

    @property
    def intrinsic_dim(self) -> int:
        return 1 if self.thickness == 0 else 2

    def _contains(self, x):
        t, y = x[:, 0], x[:, 1]
        dy = np.abs(y - self.amplitude * np.sin(t))
        ok = (t >= self.t0) & (t <= self.t1) & (dy <= self.thickness / 2 + self.tol)
        if self.fill:
            ok &= np.all(x[:, 2:] == self.fill, axis=1)
        return ok

    def draw(self, rng, k):
        if self.thickness > 0:
            t = rng.uniform(self.t0, self.t1, k)
            y = self.amplitude * np.sin(t) + self.thickness * (rng.random(k) - 0.5)
        else:
            # arc-length uniform: accept t with prob |gamma'(t)| / max |gamma'|
            top = math.sqrt(1 + self.amplitude**2)
            t = np.empty(0)
            while t.size < k:
                cand = rng.uniform(self.t0, self.t1, 2 * (k - t.size) + 8)
                speed = np.sqrt(1 + (self.amplitude * np.cos(cand)) ** 2)
                t = np.concatenate((t, cand[rng.random(cand.size) * top <= speed]))
            t = t[:k]
            y = self.amplitude * np.sin(t)
        out = np.column_stack((t, y))
        if self.fill:
            out = np.column_stack((out, np.tile(self.fill, (k, 1))))
        return out

    def mesh(self, h):
        nt = int(math.ceil((self.t1 - self.t0) * math.sqrt(1 + self.amplitude**2) / h)) + 1
        t = np.linspace(self.t0, self.t1, nt)
        offs = [0.0] if self.thickness == 0 else np.linspace(-self.thickness / 2, self.thickness / 2,
                                                              int(math.ceil(self.thickness / h)) + 1)
        pts = np.concatenate([np.column_stack((t, self.amplitude * np.sin(t) + v)) for v in offs])
        if self.fill:
            pts = np.column_stack((pts, np.tile(self.fill, (len(pts), 1))))
        return pts


@dataclass(frozen=True)
class PointMass(_Support):
    """Dirac mass at ``location``; membership is exact equality."""

    location: tuple[float, ...]
    kind: ClassVar[str] = "point"
    intrinsic_dim: ClassVar[int] = 0

    def __post_init__(self):
        object.__setattr__(self, "location", tuple(float(v) for v in self.location))

    @property
    def dim(self) -> int:
        return len(self.location)

    def _contains(self, x):
        return np.all(x == self.location, axis=1)

    def draw(self, rng, k):
        return np.tile(self.location, (k, 1))

    def mesh(self, h):
        return np.array([self.location])


def interval(a: float, b: float) -> Box:
    """Segment ``[a, b]`` of the real line."""
    return Box((a,), (b,))


SUPPORT_KINDS = {cls.kind: cls for cls in (Box, Annulus, SineCurve, PointMass)}


def contains(support, x):
    """Membership of ``x`` (one point or an (k, D) array) in ``support``."""
    return support.contains(x)


def _support_from_dict(d: dict):
    d = dict(d)
    try:
        cls = SUPPORT_KINDS[d.pop("kind")]
    except KeyError as exc:
        raise InvalidInputError(f"unknown support kind in {d!r}") from exc
    return cls(**d)


@dataclass(frozen=True)
class UniformOutliers:
    """Uniform law on ``region`` minus the group supports."""

    region: Box | Annulus
    kind: ClassVar[str] = "uniform"

    @property
    def dim(self) -> int:
        return self.region.dim

    def propose(self, rng, k):
        return self.region.draw(rng, k)

    def to_dict(self):
        return {"kind": self.kind, "region": self.region.to_dict()}


@dataclass(frozen=True)
class GaussianOutliers:
    """Bivariate Gaussian truncated off the group supports.

    Variances ``(var_x, var_y)`` and correlation ``rho``; ``|rho| == 1``
    degenerates to a line through ``mean``.
    """

    mean: tuple[float, float]
    var: tuple[float, float]
    rho: float = 0.0
    kind: ClassVar[str] = "gaussian"
    dim: ClassVar[int] = 2

    def __post_init__(self):
        object.__setattr__(self, "mean", tuple(float(v) for v in self.mean))
        object.__setattr__(self, "var", tuple(float(v) for v in self.var))
        if min(self.var) <= 0 or not -1 <= self.rho <= 1:
            raise InvalidInputError("gaussian outliers need positive variances and |rho| <= 1")

    def propose(self, rng, k):
        z = rng.standard_normal((k, 2))
        sx, sy = math.sqrt(self.var[0]), math.sqrt(self.var[1])
        # lower Cholesky factor, valid for |rho| = 1 as well
        x = self.mean[0] + sx * z[:, 0]
        y = self.mean[1] + sy * (self.rho * z[:, 0] + math.sqrt(1 - self.rho**2) * z[:, 1])
        return np.column_stack((x, y))

    def to_dict(self):
        return {"kind": self.kind, "mean": list(self.mean), "var": list(self.var), "rho": self.rho}


def _outliers_from_dict(d: dict):
    d = dict(d)
    kind = d.pop("kind", None)
    if kind == "uniform":
        return UniformOutliers(_support_from_dict(d["region"]))
    if kind == "gaussian":
        return GaussianOutliers(**d)
    raise InvalidInputError(f"unknown outlier kind {kind!r}")


@dataclass(frozen=True)
class MixtureModel:
    """Outlier proportion, group weights, group supports and outlier law."""

    epsilon: float
    weights: tuple[float, ...]
    supports: tuple
    outliers: UniformOutliers | GaussianOutliers
    delta: float | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "supports", tuple(self.supports))
        w = np.array(self.weights)
        if w.size == 0 or np.any(w <= 0) or abs(w.sum() - 1) > 1e-9:
            raise InvalidInputError(f"weights must be positive and sum to 1, got {self.weights}")
        if len(self.supports) != len(self.weights):
            raise InvalidInputError("one support per weight is required")
        if not 0 <= self.epsilon < 1:
            raise InvalidInputError(f"epsilon must lie in [0, 1), got {self.epsilon}")
        dims = {s.dim for s in self.supports} | {self.outliers.dim}
        if len(dims) != 1:
            raise InvalidInputError(f"supports and outliers disagree on dimension: {dims}")

    @property
    def m(self) -> int:
        return len(self.weights)

    @property
    def ambient_dim(self) -> int:
        return self.outliers.dim

    @property
    def probabilities(self) -> np.ndarray:
        """Component probabilities, outliers first."""
        return np.concatenate(([self.epsilon], (1 - self.epsilon) * np.array(self.weights)))

    def with_epsilon(self, epsilon: float) -> "MixtureModel":
        return replace(self, epsilon=epsilon)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "epsilon": self.epsilon,
            "weights": list(self.weights),
            "delta": self.delta,
            "supports": [s.to_dict() for s in self.supports],
            "outliers": self.outliers.to_dict(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "MixtureModel":
        try:
            return cls(
                epsilon=float(d["epsilon"]),
                weights=d["weights"],
                supports=[_support_from_dict(s) for s in d["supports"]],
                outliers=_outliers_from_dict(d["outliers"]),
                delta=d.get("delta"),
                name=d.get("name", ""),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed model document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "MixtureModel":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class LabeledSample:
    """Points with their true component: 0 for outliers, 1..M for groups."""

    points: np.ndarray
    truth: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.truth)

    def __post_init__(self):
        if len(self.points) != len(self.truth):
            raise InvalidInputError("points and truth labels differ in length")


def _draw_outliers(model: MixtureModel, rng, k: int) -> np.ndarray:
    dim = model.ambient_dim
    out = np.empty((k, dim))
    got = 0
    misses = 0
    while got < k:
        need = k - got
        cand = model.outliers.propose(rng, max(2 * need, 16))
        bad = np.zeros(len(cand), dtype=bool)
        for s in model.supports:
            bad |= s._contains(cand)
        good = cand[~bad]
        if good.size == 0:
            misses += len(cand)
            if misses > REJECTION_CAP:
                raise DegenerateModelError(
                    f"{REJECTION_CAP} outlier proposals in a row fell on the group supports"
                )
            continue
        misses = 0
        take = min(need, len(good))
        out[got:got + take] = good[:take]
        got += take
    return out


def sample(model: MixtureModel, n: int, seed) -> LabeledSample:
    """Draw ``n`` labeled points from ``model``.

    ``seed`` is an integer or a ``numpy.random.Generator`` (e.g. from
    :func:`stream`); integer seeds give bit-identical output on every call.
    """
    if int(n) != n or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    rng = seed if isinstance(seed, np.random.Generator) else stream(seed)
    truth = rng.choice(model.m + 1, size=int(n), p=model.probabilities)
    X = np.empty((int(n), model.ambient_dim))
    for comp in range(model.m + 1):
        idx = np.flatnonzero(truth == comp)
        if idx.size == 0:
            continue
        if comp == 0:
            X[idx] = _draw_outliers(model, rng, idx.size)
        else:
            X[idx] = model.supports[comp - 1].draw(rng, idx.size)
    return LabeledSample(points=X, truth=truth)


# ---------------------------------------------------------------------------
# geometry helpers


def min_gap(s1, s2, h: float = 0.01) -> float:
    """Mesh estimate of the distance between two supports.

    Mesh points lie on the supports, so the estimate never undershoots the
    true distance by more than the mesh spacing; it is used as a sanity
    check of the analytic placements below.
    """
    a, b = s1.mesh(h), s2.mesh(h)
    dist, _ = cKDTree(b).query(a, k=1)
    return float(dist.min())


def _rect_dist(px, py, x0, x1, y0, y1):
    dx = np.maximum(np.maximum(x0 - px, 0), px - x1)
    dy = np.maximum(np.maximum(y0 - py, 0), py - y1)
    return np.hypot(dx, dy)


def _curve_rect_dist(x0, x1, y0, y1, t0=0.0, t1=2 * np.pi) -> float:
    """Exact (to optimizer precision) distance from the sine curve to a rectangle."""
    t = np.linspace(t0, t1, 20001)
    d = _rect_dist(t, np.sin(t), x0, x1, y0, y1)
    best = math.inf
    step = t[1] - t[0]
    for i in np.argsort(d)[:5]:
        lo, hi = max(t0, t[i] - step), min(t1, t[i] + step)
        res = minimize_scalar(lambda s: float(_rect_dist(s, math.sin(s), x0, x1, y0, y1)),
                              bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
        best = min(best, res.fun, d[i])
    return float(best)


def _check_case(delta_case: str, family: str) -> float:
    try:
        return DELTAS[family][delta_case]
    except KeyError as exc:
        raise InvalidInputError(f"delta_case must be 'easy' or 'tricky', got {delta_case!r}") from exc


# ---------------------------------------------------------------------------
# built-in models

SQUARE_SIDE = 0.1
SQUARE_MARGIN = 0.2


@lru_cache(maxsize=64)
def squares_model(delta_case: str = "easy", epsilon: float = 0.0) -> MixtureModel:
    """Three equal-weight squares of side ``SQUARE_SIDE`` in a row, ``delta`` apart.

    Outliers are uniform on the bounding box of the squares widened by
    ``SQUARE_MARGIN`` on every side.
    """
    delta = _check_case(delta_case, "squares")
    s = SQUARE_SIDE
    squares = [Box((i * (s + delta), 0.0), (i * (s + delta) + s, s)) for i in range(3)]
    lo = (-SQUARE_MARGIN, -SQUARE_MARGIN)
    hi = (3 * s + 2 * delta + SQUARE_MARGIN, s + SQUARE_MARGIN)
    return _validated(MixtureModel(
        epsilon=epsilon,
        weights=(1 / 3, 1 / 3, 1 / 3),
        supports=squares,
        outliers=UniformOutliers(Box(lo, hi)),
        delta=delta,
        name=f"squares-{delta_case}",
    ))


@lru_cache(maxsize=64)
def circles_model(delta_case: str = "easy", epsilon: float = 0.0) -> MixtureModel:
    """Two concentric rings, weights 0.4 (inner) and 0.6 (outer).

    Inner ring radii [1, 2], outer ring [2 + delta, 3 + delta]; outliers
    fill the empty ring between them.
    """
    delta = _check_case(delta_case, "circles")
    inner = Annulus((0.0, 0.0), 1.0, 2.0)
    outer = Annulus((0.0, 0.0), 2.0 + delta, 3.0 + delta)
    return _validated(MixtureModel(
        epsilon=epsilon,
        weights=(0.4, 0.6),
        supports=(inner, outer),
        outliers=UniformOutliers(Annulus((0.0, 0.0), 2.0, 2.0 + delta)),
        delta=delta,
        name=f"circles-{delta_case}",
    ))


SINE_SQUARE_SIDE = 1.4


@lru_cache(maxsize=None)
def _sine_squares(delta: float) -> tuple[tuple[float, float, float, float], ...]:
    """Two squares nested in the arches of sin on [0, 2 pi], ``delta`` from the curve.

    One sits under the positive arch around t = pi/2, the other is its
    mirror image through (pi, 0), above the negative arch.
    """
    s = SINE_SQUARE_SIDE
    x0, x1 = np.pi / 2 - s / 2, np.pi / 2 + s / 2

    def gap(top):
        return _curve_rect_dist(x0, x1, top - s, top) - delta

    top = brentq(gap, -5.0, 1.0 - 1e-9, xtol=1e-14)
    a = (x0, x1, top - s, top)
    b = (2 * np.pi - x1, 2 * np.pi - x0, -top, s - top)
    return a, b


@lru_cache(maxsize=64)
def sine_model(delta_case: str = "easy", epsilon: float = 0.0, ambient_dim: int = 2,
               fill: float = np.pi) -> MixtureModel:
    """Sine curve on [0, 2 pi] plus two squares of side ``SINE_SQUARE_SIDE``.

    Weights are equal. Outliers are uniform on ``[0, 2 pi]`` times the
    vertical extent of the groups (times ``[0, 2 pi]`` for every extra
    dimension), minus the supports. In more than two
    dimensions the groups keep their planar shape and every extra
    coordinate of a group point equals ``fill``.
    """
    delta = _check_case(delta_case, "sine")
    if int(ambient_dim) != ambient_dim or ambient_dim < 2:
        raise InvalidInputError(f"ambient_dim must be an integer >= 2, got {ambient_dim!r}")
    extra = int(ambient_dim) - 2
    pad = (float(fill),) * extra
    a, b = _sine_squares(delta)
    supports = (
        SineCurve(0.0, 2 * np.pi, fill=pad),
        Box((a[0], a[2]) + pad, (a[1], a[3]) + pad),
        Box((b[0], b[2]) + pad, (b[1], b[3]) + pad),
    )
    ylo, yhi = min(-1.0, a[2]), max(1.0, b[3])
    region = Box((0.0, ylo) + (0.0,) * extra, (2 * np.pi, yhi) + (2 * np.pi,) * extra)
    return _validated(MixtureModel(
        epsilon=epsilon,
        weights=(1 / 3, 1 / 3, 1 / 3),
        supports=supports,
        outliers=UniformOutliers(region),
        delta=delta,
        name=f"sine-{delta_case}" + (f"-D{ambient_dim}" if extra else ""),
    ))


def sine_highdim_model(ambient_dim: int, epsilon: float = 0.2,
                       delta_case: str = "tricky") -> MixtureModel:
    """Sine model (tricky by default) with outliers spread over ``ambient_dim`` dimensions."""
    if int(ambient_dim) != ambient_dim or ambient_dim < 2:
        raise InvalidInputError(f"ambient_dim must be an integer >= 2, got {ambient_dim!r}")
    return sine_model(delta_case, epsilon=epsilon, ambient_dim=int(ambient_dim))


def gaussian_noise_sine_model(sigma2: float, rho: float, epsilon: float = 0.1,
                              delta_case: str = "tricky") -> MixtureModel:
    """Tricky sine model with Gaussian outliers centred at (pi, 0).

    Variances are ``2 sigma2`` along x and ``sigma2`` along y, correlation
    ``rho``; draws landing on a group support are rejected.
    """
    if not sigma2 > 0:
        raise InvalidInputError(f"sigma2 must be positive, got {sigma2}")
    base = sine_model(delta_case, epsilon=epsilon)
    return replace(
        base,
        outliers=GaussianOutliers((np.pi, 0.0), (2 * sigma2, sigma2), rho),
        name=f"sine-gauss-s{sigma2:g}-r{rho:g}",
    )


@lru_cache(maxsize=64)
def example2_model(epsilon: float) -> MixtureModel:
    """Two atoms at -1 and +1 with equal weights, outliers uniform on [-3, 3]."""
    if not 0 <= epsilon < 1:
        raise InvalidInputError(f"epsilon must lie in [0, 1), got {epsilon}")
    return _validated(MixtureModel(
        epsilon=epsilon,
        weights=(0.5, 0.5),
        supports=(PointMass((-1.0,)), PointMass((1.0,))),
        outliers=UniformOutliers(interval(-3.0, 3.0)),
        delta=2.0,
        name="example2",
    ))


@lru_cache(maxsize=None)
def _mesh_gap(supports, h):
    return min(min_gap(a, b, h) for i, a in enumerate(supports) for b in supports[i + 1:])


def validate_gaps(model: MixtureModel, h: float = 0.02, tol: float = 1e-6) -> float:
    """Check on a support mesh that no two supports are closer than ``model.delta``.

    Returns the smallest mesh gap.
    """
    g = _mesh_gap(model.supports, h)
    if model.delta is not None and g < model.delta - tol:
        raise InvalidInputError(f"supports are {g:.6g} apart, below delta={model.delta}")
    return g


def _validated(model: MixtureModel) -> MixtureModel:
    validate_gaps(model)
    return model


MODELS = {
    "squares": squares_model,
    "circles": circles_model,
    "sine": sine_model,
}


def build_model(name: str, delta_case: str = "easy", epsilon: float = 0.0, **kwargs) -> MixtureModel:
    """Look up a built-in model by name.

    Names: ``squares``, ``circles``, ``sine``, ``sine-highdim`` (needs
    ``ambient_dim``), ``sine-gauss`` (needs ``sigma2``, ``rho``), ``example2``.
    """
    if name == "sine" and kwargs:
        return sine_model(delta_case, epsilon=epsilon, **kwargs)
    if name in MODELS:
        return MODELS[name](delta_case, epsilon=epsilon)
    if name == "sine-highdim":
        return sine_highdim_model(kwargs["ambient_dim"], epsilon=epsilon, delta_case=delta_case)
    if name == "sine-gauss":
        return gaussian_noise_sine_model(kwargs["sigma2"], kwargs["rho"], epsilon=epsilon,
                                         delta_case=delta_case)
    if name == "example2":
        return example2_model(epsilon)
    raise InvalidInputError(f"unknown model {name!r}")
