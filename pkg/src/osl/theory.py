"""Closed-form quantities behind the risk guarantees of the OSL rule.

Everything here is evaluation only: ``ModelConstants`` gathers the model
parameters (weights, outlier proportion, density constants, dimensions,
separation) and the functions below turn them into the admissible ``eta``
range, the complexity constants ``a`` and ``b``, and the risk upper bound.

The bound's leading constant ``lam`` cannot be computed from the model
(it depends on covering numbers of the supports); callers must supply it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import InfeasibleModelError, InvalidInputError

__all__ = [
    "ModelConstants",
    "a6_epsilon_bound",
    "ball_volume",
    "check_a6",
    "constants_ab",
    "eta_thresholds",
    "log_risk_bound",
    "minimize_bound",
    "psi",
    "risk_bound",
]


def ball_volume(s: float) -> float:
    """Volume of the unit ball in dimension ``s``, pi^(s/2) / Gamma(1 + s/2).

    Defined for any real ``s >= 0``.
    """
    if not s >= 0:
        raise InvalidInputError(f"dimension must be nonnegative, got {s}")
    return math.exp(0.5 * s * math.log(math.pi) - gammaln(1.0 + 0.5 * s))


def psi(eta: float) -> float:
    """(1 + eta)(log(1 + eta) - 1) + 1, the concentration exponent."""
    if not eta > 0:
        raise InvalidInputError(f"eta must be positive, got {eta}")
    # log1p keeps the small-eta regime accurate
    return (1.0 + eta) * math.log1p(eta) - eta


@dataclass(frozen=True)
class ModelConstants:
    """Model parameters entering the risk bound.

    ``gamma_star``/``gamma_sup`` are the smallest/largest group weights,
    ``kappa0`` bounds the outlier density, ``kappa_sup`` and ``kappa_c`` the
    group densities and support regularity, ``d`` is the largest Hausdorff
    dimension of the group supports and ``big_d`` the ambient dimension.
    """

    gamma_star: float
    gamma_sup: float
    epsilon: float
    delta: float
    n: int
    m: int
    d: float
    big_d: float
    kappa0: float = 1.0
    kappa_sup: float = 1.0
    kappa_c: float = 1.0
    lam: float = 1.0
    eta: float | None = None

    def __post_init__(self):
        if not 0 < self.gamma_star <= self.gamma_sup:
            raise InvalidInputError("need 0 < gamma_star <= gamma_sup")
        if not 0 <= self.epsilon < 1:
            raise InvalidInputError(f"epsilon must lie in [0, 1), got {self.epsilon}")
        if not self.delta > 0:
            raise InvalidInputError("delta must be positive")
        if not 0 <= self.d <= self.big_d:
            raise InvalidInputError("need 0 <= d <= D")
        if not self.lam > 0:
            raise InvalidInputError("lam must be positive")
        if self.n < 1 or self.m < 1:
            raise InvalidInputError("n and m must be positive")

    @property
    def gamma_bar(self) -> float:
        return self.gamma_star - self.gamma_sup / 2

    @classmethod
    def from_weights(cls, weights: Sequence[float], **kwargs) -> "ModelConstants":
        w = _check_weights(weights)
        return cls(gamma_star=float(w.min()), gamma_sup=float(w.max()), m=len(w), **kwargs)


def _check_weights(weights) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0 or np.any(w <= 0) or abs(w.sum() - 1) > 1e-9:
        raise InvalidInputError(f"weights must be positive and sum to 1, got {weights!r}")
    return w


def _a6(gamma_star, gamma_sup, epsilon) -> bool:
    gbar = gamma_star - gamma_sup / 2
    return gamma_sup < 2 * gamma_star and 0 <= epsilon < gbar / (1 + gbar)


def a6_epsilon_bound(weights: Sequence[float]) -> float:
    """Largest admissible outlier proportion (exclusive) for ``weights``.

    Returns 0 when the weights alone already violate the condition.
    """
    w = _check_weights(weights)
    gbar = w.min() - w.max() / 2
    return float(gbar / (1 + gbar)) if gbar > 0 else 0.0


def check_a6(weights: Sequence[float], epsilon: float) -> bool:
    """True when the largest weight is below twice the smallest and
    ``epsilon < gbar / (1 + gbar)`` with ``gbar = min(w) - max(w) / 2``."""
    w = _check_weights(weights)
    return _a6(w.min(), w.max(), epsilon)


def eta_thresholds(c: ModelConstants) -> tuple[float, float]:
    """Upper limits ``(eta0, eta1)`` for the admissible ``eta``."""
    if not _a6(c.gamma_star, c.gamma_sup, c.epsilon):
        raise InfeasibleModelError("weights/epsilon violate the feasibility condition")
    eta0 = 1 - 1 / ((1 - c.epsilon) * (1 + c.gamma_bar))
    t = c.gamma_star / c.gamma_sup - 0.5
    eta1 = t / (4 + t)
    return eta0, eta1


def constants_ab(c: ModelConstants) -> tuple[float, float]:
    """Complexity constants ``(a, b)``.

    ``a`` grows with the group density and regularity, ``b`` with the
    outlier density; small ``a`` or large ``b`` mean a hard problem.
    """
    if min(c.kappa0, c.kappa_sup, c.kappa_c) <= 0:
        raise InvalidInputError("kappa constants must be positive")
    a = c.gamma_star / (c.kappa_sup * c.kappa_c) * min(1.0, ball_volume(c.d)) / (1 + c.gamma_bar)
    b = ball_volume(c.big_d) * c.kappa0
    return a, b


def _terms(r, c, a, b, eta, tail):
    """Log of the connectivity, outlier-chain and concentration terms."""
    log_t1 = math.log(c.lam) - c.d * math.log(r) - a * c.n * r**c.d
    if c.epsilon == 0:
        log_t2 = -math.inf
    else:
        k = math.floor(c.delta / r)
        log_t2 = math.log(c.n * c.epsilon) + k * (
            math.log(b * c.epsilon * c.n) + c.big_d * math.log(r)
        )
    log_t3 = math.log(tail * c.m) - psi(eta) * (1 - c.epsilon) * c.gamma_bar * c.n
    return log_t1, log_t2, log_t3


def _prepare(r, c, a, b, eta):
    if not 0 < r < c.delta:
        raise InvalidInputError(f"r must lie in (0, delta={c.delta}), got {r}")
    eta = c.eta if eta is None else eta
    if eta is None:
        raise InvalidInputError("eta is required")
    eta0, _ = eta_thresholds(c)
    if not 0 < eta < eta0:
        raise InvalidInputError(f"eta must lie in (0, eta0={eta0:.6g}), got {eta}")
    if a is None or b is None:
        a0, b0 = constants_ab(c)
        a = a0 if a is None else a
        b = b0 if b is None else b
    return a, b, eta


def log_risk_bound(r: float, c: ModelConstants, *, a=None, b=None, eta=None) -> float:
    """Natural log of :func:`risk_bound`; finite even when the bound is not."""
    a, b, eta = _prepare(r, c, a, b, eta)
    return float(logsumexp(_terms(r, c, a, b, eta, 2)))


def risk_bound(r: float, c: ModelConstants, *, a=None, b=None, eta=None) -> float:
    """Upper bound on the clustering risk of the cut at radius ``r``.

    Sum of three terms: within-group connectivity failure
    ``lam r^-d exp(-a n r^d)``, an outlier chain bridging two groups
    ``n eps (b eps n r^D)^floor(delta / r)``, and the size-concentration tail
    ``2 m exp(-psi(eta) (1 - eps) gbar n)``. ``a`` and ``b`` default to
    :func:`constants_ab`, ``eta`` to ``c.eta``.

    The raw value is returned, it may exceed 1.
    """
    return math.exp(log_risk_bound(r, c, a=a, b=b, eta=eta))


def minimize_bound(c: ModelConstants, grid, *, a=None, b=None, eta=None) -> tuple[float, float]:
    """Grid minimizer of the bound on the risk of the OSL-selected cut.

    The objective is the connectivity and outlier-chain terms at ``r`` plus
    a ``4 m exp(-psi(eta) (1 - eps) gbar n)`` tail. Ties go to the larger r.

    Returns
    -------
    (r_best, value)
    """
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0:
        raise InvalidInputError("grid is empty")
    if np.any(~(grid > 0)) or np.any(grid >= c.delta):
        raise InvalidInputError(f"grid must lie in (0, delta={c.delta})")
    logs = []
    for r in grid.tolist():
        a_, b_, eta_ = _prepare(r, c, a, b, eta)
        logs.append(float(logsumexp(_terms(r, c, a_, b_, eta_, 4))))
    logs = np.asarray(logs)
    best = np.flatnonzero(logs == logs.min())
    i = best[np.argmax(grid[best])]
    return float(grid[i]), float(math.exp(logs[i]))
