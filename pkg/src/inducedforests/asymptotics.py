"""Main-term asymptotics for bounded-degree tree and forest counts.

Counts at ``n`` in the hundreds overflow doubles, so every estimate is reported
as a natural logarithm. Only main terms are evaluated; the ``1 + o(1)``
corrections are not modelled.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .gamma import solve_alpha

__all__ = [
    "LogScaleEstimate",
    "SaddlePoint",
    "ConcentrationPrediction",
    "log_factorial",
    "tree_count_asymptotic",
    "solve_saddle_point",
    "weighted_forest_sum_asymptotic",
    "tree_count_via_probability_identity",
    "concentration_window_dense",
    "concentration_window_sparse",
]

# B_{2k} / (2k (2k-1)) for k = 1..8
_STIRLING_TERMS = (
    1 / 12,
    -1 / 360,
    1 / 1260,
    -1 / 1680,
    1 / 1188,
    -691 / 360360,
    1 / 156,
    -3617 / 122400,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def log_factorial(n: int) -> float:
    """``ln n!``: exact below 10, Stirling series with eight corrections above."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n < 10:
        return math.log(math.factorial(n))
    x = float(n)
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    power = inv
    for c in _STIRLING_TERMS:
        corr += c * power
        power *= inv2
    return (x + 0.5) * math.log(x) - x + _HALF_LOG_2PI + corr


def _gamma(delta: int, x: float) -> float:
    # gamma_delta for any integer delta; gamma_0 (and below) is the empty sum
    acc = 0.0
    for k in range(delta - 1, -1, -1):
        acc = acc * x + 1.0 / math.factorial(k)
    return acc


@dataclass(frozen=True)
class LogScaleEstimate:
    """Natural log of an estimated count, tagged with the formula that produced it."""

    log_value: float
    formula_id: str
    n: int
    delta: int
    w: Optional[float] = None
    p: Optional[float] = None
    alpha: Optional[float] = None
    r: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.log_value):
            raise ArithmeticError(f"{self.formula_id}: non-finite estimate {self.log_value}")

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass(frozen=True)
class SaddlePoint:
    """Root ``r`` of ``x g'(x)/g(x) + x w/n = 1`` and the curvature term ``beta``."""

    r: float
    beta: float
    w: float
    n: int
    delta: int
    residual: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ConcentrationPrediction:
    """Predicted locations of the largest induced bounded-degree tree/forest in G(n, p)."""

    n: int
    p: float
    delta: int
    epsilon: float
    growth: float  # a_delta, or e for the unbounded-degree variant
    centre: float  # 2 log_q(growth * n * p)
    window_dense: tuple
    lower_level: int
    k_minus_eps: int
    k_plus_eps: int
    window_sparse: tuple = field(init=False)

    def __post_init__(self):
        if self.k_minus_eps > self.k_plus_eps:
            raise ArithmeticError("sparse window is empty")
        object.__setattr__(self, "window_sparse", (self.k_minus_eps, self.k_plus_eps))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window_dense"] = list(self.window_dense)
        d["window_sparse"] = list(self.window_sparse)
        return d


def tree_count_asymptotic(n: int, delta: int) -> LogScaleEstimate:
    """``alpha sqrt(gamma_delta(alpha)/gamma_{delta-2}(alpha)) (a/e)**n n**(n-2)`` in log form."""
    if delta < 3:
        raise ValueError(f"delta must be >= 3, got {delta}")
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    c = solve_alpha(delta)
    alpha = c.alpha
    # ln(a/e) = log1p(-(e-a)/e) keeps precision once a is within rounding of e
    log_a_over_e = math.log1p(-c.gap / math.e)
    value = (
        math.log(alpha)
        + 0.5 * math.log(_gamma(delta, alpha) / _gamma(delta - 2, alpha))
        + n * log_a_over_e
        + (n - 2) * math.log(n)
    )
    return LogScaleEstimate(value, "tree_count", n, delta, alpha=alpha)


def solve_saddle_point(n: int, w: float, delta: int) -> SaddlePoint:
    """Bisect ``x gamma'(x)/gamma(x) + x w/n = 1`` on ``(1e-9, min(2, n/w))``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if delta < 2:
        raise ValueError(f"delta must be >= 2, got {delta}")
    w = float(w)
    if not w > 0:
        raise ValueError(f"w must be positive, got {w}")

    def h(x):
        return x * _gamma(delta - 1, x) / _gamma(delta, x) + x * w / n - 1.0

    lo, hi = 1e-9, min(2.0, n / w)
    if not (h(lo) < 0.0 < h(hi)):
        raise ArithmeticError(f"saddle equation not bracketed on ({lo}, {hi}) for n={n}, w={w}, delta={delta}")
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if h(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    r = hi if abs(h(hi)) <= abs(h(lo)) else lo
    res = h(r)
    if abs(res) >= 1e-12:
        raise ArithmeticError(f"saddle residual {res} too large")
    beta = r * r * _gamma(delta - 2, r) / _gamma(delta, r) + 2 * r * w / n - r * r * w * w / (n * n)
    if not beta > 0:
        raise ArithmeticError(f"non-positive beta={beta} at r={r}")
    return SaddlePoint(r=r, beta=beta, w=w, n=n, delta=delta, residual=res)


def weighted_forest_sum_asymptotic(n: int, w: float, delta: int) -> LogScaleEstimate:
    """``w (n-1)! gamma(r)**n e**(r w) / (r**(n-1) sqrt(2 pi beta n))`` in log form."""
    w = float(w)
    if not 0 < w <= n:
        raise ValueError(f"need 0 < w <= n, got w={w}, n={n}")
    sp = solve_saddle_point(n, w, delta)
    r = sp.r
    value = (
        math.log(w)
        + log_factorial(n - 1)
        - (n - 1) * math.log(r)
        + n * math.log(_gamma(delta, r))
        + r * w
        - 0.5 * math.log(2 * math.pi * sp.beta * n)
    )
    return LogScaleEstimate(value, "weighted_forest_sum", n, delta, w=w, r=r, beta=sp.beta)


def tree_count_via_probability_identity(n: int, delta: int, alpha: float | None = None) -> LogScaleEstimate:
    """Tree count from ``gamma(alpha)**n / alpha**(n-2) (n-2)! P(S_n = n-2)``.

    ``S_n`` sums ``n`` independent copies of ``xi`` with
    ``P(xi = k) = alpha**k / (k! gamma_delta(alpha))``, ``k < delta``. The tilt
    cancels exactly, so any positive ``alpha`` gives the same value; the default
    is ``alpha_delta``.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if delta < 2:
        raise ValueError(f"delta must be >= 2, got {delta}")
    if alpha is None:
        alpha = solve_alpha(delta).alpha if delta >= 3 else 1.0
    alpha = float(alpha)
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    g = _gamma(delta, alpha)
    step = np.array([alpha ** k / math.factorial(k) for k in range(delta)]) / g
    dist = np.ones(1)
    for _ in range(n):
        dist = np.convolve(dist, step)
        total = dist.sum()
        if abs(total - 1.0) > 1e-9:
            raise ArithmeticError(f"convolution lost normalisation: sum = {total}")
    prob = dist[n - 2]
    if not prob > 0:
        raise ArithmeticError(f"P(S_n = n-2) underflowed for alpha={alpha}")
    value = n * math.log(g) - (n - 2) * math.log(alpha) + log_factorial(n - 2) + math.log(prob)
    return LogScaleEstimate(value, "probability_identity", n, delta, alpha=alpha)


def _check_p(p):
    p = float(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return p


def _prediction(n, p, delta, epsilon, unbounded):
    p = _check_p(p)
    epsilon = float(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    growth = math.e if unbounded else solve_alpha(delta).a
    log_q = -math.log1p(-p)

    def two_log_q(y):
        return 2 * math.log(y) / log_q

    centre = two_log_q(growth * n * p)
    return ConcentrationPrediction(
        n=n,
        p=p,
        delta=delta,
        epsilon=epsilon,
        growth=growth,
        centre=centre,
        window_dense=(math.ceil(centre + 1), math.ceil(centre + 2)),
        lower_level=math.ceil(centre + 3 - epsilon),
        k_minus_eps=math.floor(two_log_q(growth * n * p * (1 - epsilon)) + 3),
        k_plus_eps=math.ceil(two_log_q(growth * n * p * (1 + epsilon)) + 3),
    )


def concentration_window_dense(n: int, p: float, delta: int, epsilon: float = 0.1,
                               unbounded: bool = False) -> ConcentrationPrediction:
    """Two-point window ``{ceil(c+1), ceil(c+2)}`` with ``c = 2 log_q(a_delta n p)``, ``q = 1/(1-p)``.

    ``lower_level`` is the sharper lower bound ``ceil(c + 3 - epsilon)``. With
    ``unbounded=True`` the growth constant ``a_delta`` is replaced by ``e``.
    """
    if not unbounded and delta < 3:
        raise ValueError(f"delta must be >= 3, got {delta}")
    return _prediction(n, p, delta, epsilon, unbounded)


def concentration_window_sparse(n: int, p: float, delta: int, epsilon: float,
                                unbounded: bool = False) -> ConcentrationPrediction:
    """Window ``[floor(2 log_q(a n p (1-eps)) + 3), ceil(2 log_q(a n p (1+eps)) + 3)]``."""
    if not unbounded and delta < 3:
        raise ValueError(f"delta must be >= 3, got {delta}")
    return _prediction(n, p, delta, epsilon, unbounded)
