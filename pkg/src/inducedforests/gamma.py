"""Truncated exponential polynomials and the growth constants built from them.

``gamma(delta, x) = sum_{k < delta} x**k / k!`` is the generating polynomial of a
single vertex's admissible child counts when degrees are capped at ``delta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "GammaPolynomial",
    "StructuralConstants",
    "gamma_eval",
    "solve_alpha",
    "a_delta_sequence",
]


@lru_cache(maxsize=None)
def _exact_coefficients(delta: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1, math.factorial(k)) for k in range(delta))


@lru_cache(maxsize=None)
def _float_coefficients(delta: int) -> tuple[float, ...]:
    return tuple(1.0 / math.factorial(k) for k in range(delta))


def _check_delta(delta, minimum):
    if isinstance(delta, bool) or not isinstance(delta, int):
        raise TypeError(f"delta must be an int, got {type(delta).__name__}")
    if delta < minimum:
        raise ValueError(f"delta must be >= {minimum}, got {delta}")


def gamma_eval(delta: int, x):
    """Evaluate ``gamma_delta`` at ``x`` by Horner's rule.

    Exact inputs (``int`` or ``Fraction``) give an exact ``Fraction``; floats give
    a float.
    """
    _check_delta(delta, 1)
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    if isinstance(x, Rational):
        coeffs = _exact_coefficients(delta)
        acc = Fraction(0)
        x = Fraction(x)
    else:
        coeffs = _float_coefficients(delta)
        acc = 0.0
        x = float(x)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class GammaPolynomial:
    """``gamma_delta`` as an exact polynomial with coefficients ``1/k!``."""

    delta: int

    def __post_init__(self):
        _check_delta(self.delta, 1)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return _exact_coefficients(self.delta)

    @property
    def degree(self) -> int:
        return self.delta - 1

    def __call__(self, x):
        return gamma_eval(self.delta, x)

    def derivative(self) -> "GammaPolynomial":
        if self.delta < 2:
            raise ValueError("derivative of gamma_1 is the zero polynomial")
        return GammaPolynomial(self.delta - 1)

    def derivative_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(k * c for k, c in enumerate(self.coefficients))[1:]


@dataclass(frozen=True)
class StructuralConstants:
    """``alpha`` solves ``x*gamma_{delta-1}(x) = gamma_delta(x)``; ``a = gamma_{delta-1}(alpha)``.

    ``alpha_minus_one`` and ``gap`` (= e - a) are carried separately because for
    large ``delta`` both fall below double resolution relative to 1 and e.
    """

    delta: int
    alpha: float
    a: float
    tolerance: float
    alpha_minus_one: float
    gap: float

    @property
    def residual(self) -> float:
        x = self.alpha
        return x * gamma_eval(self.delta - 1, x) / gamma_eval(self.delta, x) - 1.0

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "alpha": self.alpha,
            "a": self.a,
            "tolerance": self.tolerance,
            "alpha_minus_one": self.alpha_minus_one,
            "e_minus_a": self.gap,
        }


def _shifted_residual(delta: int, d: float) -> float:
    # (x-1)*gamma_{delta-1}(x) - x**(delta-1)/(delta-1)! at x = 1+d, without forming 1+d - 1
    x = 1.0 + d
    return d * gamma_eval(delta - 1, x) - x ** (delta - 1) / math.factorial(delta - 1)


def _gap_to_e(delta: int, d: float) -> float:
    # e - gamma_{delta-1}(1+d) = sum_{k>=delta-1} 1/k! - sum_{k<=delta-2} ((1+d)**k - 1)/k!
    tail = 0.0
    k = delta - 1
    term = 1.0 / math.factorial(k)
    while term > 0.0 and term > tail * 1e-18:
        tail += term
        k += 1
        term /= k
    lift = math.fsum(math.expm1(k * math.log1p(d)) / math.factorial(k) for k in range(1, delta - 1))
    return tail - lift


def solve_alpha(delta: int, tol: float = 1e-12) -> StructuralConstants:
    """Bisect for ``alpha_delta`` on ``[1, (delta-1)/(delta-2)]``.

    The unknown is ``d = alpha - 1``, so the bracket is ``[0, 1/(delta-2)]``.
    Bisection runs to machine resolution of ``d`` (always finer than ``tol``),
    which matters for large ``delta`` where ``d`` drops below any absolute
    tolerance.
    """
    _check_delta(delta, 3)
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    lo, hi = 0.0, 1.0 / (delta - 2)
    f_lo, f_hi = _shifted_residual(delta, lo), _shifted_residual(delta, hi)
    if not (f_lo < 0.0 < f_hi):
        raise ArithmeticError(f"residual does not change sign on the bracket for delta={delta}")
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _shifted_residual(delta, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    if hi - lo > tol:
        raise ArithmeticError(f"bisection stalled at width {hi - lo} > tol={tol}")
    d = hi if abs(_shifted_residual(delta, hi)) <= abs(_shifted_residual(delta, lo)) else lo
    width = hi - lo
    gap = _gap_to_e(delta, d)
    return StructuralConstants(
        delta=delta,
        alpha=1.0 + d,
        a=math.e - gap,
        tolerance=width,
        alpha_minus_one=d,
        gap=gap,
    )


def a_delta_sequence(delta_max: int, tol: float = 1e-12) -> list[StructuralConstants]:
    """Constants for ``delta = 3..delta_max``, checked non-decreasing in ``a``."""
    _check_delta(delta_max, 3)
    out = [solve_alpha(d, tol) for d in range(3, delta_max + 1)]
    for prev, cur in zip(out, out[1:]):
        if cur.a < prev.a:
            raise ArithmeticError(f"a_delta decreased between delta={prev.delta} and {cur.delta}")
    return out
