"""Exact enumeration of bounded-degree trees and rooted forests.

Every count is an arbitrary-precision ``int`` (or an exact ``Fraction`` for the
moment formulas); nothing is rounded upstream. Direct formulas are capped at
``EXACT_CAP`` vertices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from numbers import Rational
from typing import Iterator, Sequence

from .errors import CapExceededError
from .gamma import solve_alpha
from .prufer import (
    ForestCode,
    LabeledRootedForest,
    LabeledTree,
    decode_rooted_forest,
    decode_tree,
)
from .series import SeriesCoefficients

__all__ = [
    "EXACT_CAP",
    "ENUMERATION_CAP",
    "CapExceededError",
    "ForestShape",
    "gamma_series",
    "trees_bounded_degree_exact",
    "rooted_forests_bounded_degree_exact",
    "rooted_forest_counts",
    "weighted_forest_sum_direct",
    "weighted_forest_sum_coefficient",
    "weighted_forest_sum_exact",
    "trees_containing_forest",
    "forests_containing_forest",
    "multinomial",
    "trees_with_independent_set_and_degrees",
    "as_rational",
    "expected_induced_trees",
    "expected_induced_rooted_forests",
    "component_count_feasible",
    "rooted_forest_bounds_diagnostic",
    "enumerate_all_trees",
    "enumerate_all_rooted_forests",
]

EXACT_CAP = 300
ENUMERATION_CAP = 9




def _check_int(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")


def _check_cap(n, cap=EXACT_CAP):
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the exact-count cap {cap}; use the asymptotic estimates")


@lru_cache(maxsize=None)
def gamma_series(delta: int) -> SeriesCoefficients:
    """``gamma_delta`` as a series over the common denominator ``(delta-1)!``."""
    _check_int("delta", delta, 1)
    den = math.factorial(delta - 1)
    return SeriesCoefficients(tuple(den // math.factorial(k) for k in range(delta)), den)


@lru_cache(maxsize=64)
def _gamma_power(delta: int, n: int) -> SeriesCoefficients:
    # gamma_delta(x)**n through x**n, enough for every coefficient used below
    return gamma_series(delta).power(n, n)


def _as_int(value: Fraction) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"expected an integer count, got {value}")
    return value.numerator


def trees_bounded_degree_exact(n: int, delta: int, cap: int = EXACT_CAP) -> int:
    """``t_delta(n) = (n-2)! [x^(n-2)] gamma_delta(x)**n``."""
    _check_int("n", n, 2)
    _check_int("delta", delta, 2)
    _check_cap(n, cap)
    return _as_int(math.factorial(n - 2) * _gamma_power(delta, n)[n - 2])


def rooted_forest_counts(n: int, delta: int, cap: int = EXACT_CAP) -> list[int]:
    """``[f_delta(n, m) for m in 1..n]`` from a single series power."""
    _check_int("n", n, 1)
    _check_int("delta", delta, 2)
    _check_cap(n, cap)
    g = _gamma_power(delta, n)
    fn1 = math.factorial(n - 1)
    return [_as_int(Fraction(fn1, math.factorial(m - 1)) * g[n - m]) for m in range(1, n + 1)]


def rooted_forests_bounded_degree_exact(n: int, m: int, delta: int, cap: int = EXACT_CAP) -> int:
    """Rooted forests on ``[n]`` with ``m`` trees, degrees <= delta, root degrees <= delta-1.

    ``f_delta(n, m) = (n-1)!/(m-1)! [x^(n-m)] gamma_delta(x)**n``.
    """
    _check_int("n", n, 1)
    _check_int("delta", delta, 2)
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    _check_cap(n, cap)
    g = _gamma_power(delta, n)
    return _as_int(Fraction(math.factorial(n - 1), math.factorial(m - 1)) * g[n - m])


def _rational(w, name="w") -> Fraction:
    if isinstance(w, Rational):
        return Fraction(w)
    if isinstance(w, str):
        return Fraction(w)
    raise TypeError(f"{name} must be an exact rational (int, Fraction or 'a/b' string)")


def weighted_forest_sum_direct(n: int, w, delta: int, cap: int = EXACT_CAP) -> Fraction:
    """``sum_m f_delta(n, m) * w**m`` term by term."""
    w = _rational(w)
    return sum((f * w ** m for m, f in enumerate(rooted_forest_counts(n, delta, cap), start=1)), Fraction(0))


def weighted_forest_sum_coefficient(n: int, w, delta: int, cap: int = EXACT_CAP) -> Fraction:
    """``(n-1)! * w * [x^n] x * gamma_delta(x)**n * sum_{j<n} (w x)**j / j!``."""
    w = _rational(w)
    _check_int("n", n, 1)
    _check_int("delta", delta, 2)
    _check_cap(n, cap)
    exp_w = SeriesCoefficients.from_fractions(w ** j / math.factorial(j) for j in range(n))
    prod = _gamma_power(delta, n).shift(1).multiply(exp_w, n)
    return math.factorial(n - 1) * w * prod[n]


def weighted_forest_sum_exact(n: int, w, delta: int, cap: int = EXACT_CAP) -> Fraction:
    """Weighted rooted-forest sum, computed by both routes and cross-checked."""
    w = _rational(w)
    if w <= 0:
        raise ValueError(f"w must be positive, got {w}")
    direct = weighted_forest_sum_direct(n, w, delta, cap)
    via_series = weighted_forest_sum_coefficient(n, w, delta, cap)
    if direct != via_series:
        raise ArithmeticError(f"weighted sum mismatch at n={n}, w={w}, delta={delta}")
    return direct


@dataclass(frozen=True)
class ForestShape:
    """Multiset of component sizes of a fixed forest, stored in decreasing order."""

    component_sizes: tuple

    def __init__(self, component_sizes: Sequence[int]):
        sizes = tuple(sorted((int(s) for s in component_sizes), reverse=True))
        if not sizes:
            raise ValueError("a forest shape needs at least one component")
        if any(s < 1 for s in sizes):
            raise ValueError("component sizes must be positive")
        object.__setattr__(self, "component_sizes", sizes)

    @property
    def ell(self) -> int:
        return sum(self.component_sizes)

    @property
    def m(self) -> int:
        return len(self.component_sizes)


def _as_shape(shape) -> ForestShape:
    return shape if isinstance(shape, ForestShape) else ForestShape(shape)


def trees_containing_forest(n: int, shape) -> int:
    """Trees on ``[n]`` containing a fixed forest of this shape as an induced subgraph.

    ``l_1 ... l_m * n**(n-l-1) * (n-l)**(m-1)``; singleton components are allowed.
    """
    shape = _as_shape(shape)
    _check_int("n", n, 1)
    ell, m = shape.ell, shape.m
    if ell > n:
        raise ValueError(f"shape has {ell} vertices but n={n}")
    value = Fraction(math.prod(shape.component_sizes)) * Fraction(n) ** (n - ell - 1) * (n - ell) ** (m - 1)
    return _as_int(value)


def forests_containing_forest(n: int, h: int, shape) -> int:
    """Rooted forests on ``[n]`` with ``h`` trees containing a fixed forest of this shape
    as an induced subgraph.

    Evaluates ``l_1...l_m * sum_j C(n-l, j) l**(n-l-j) C(j+m-1, h-1) (n-l)**(j+m-h)``.
    Each component carries a root, so ``h = 1`` gives ``n * trees_containing_forest``.
    """
    shape = _as_shape(shape)
    _check_int("n", n, 1)
    _check_int("h", h, 1)
    ell, m = shape.ell, shape.m
    if ell > n:
        raise ValueError(f"shape has {ell} vertices but n={n}")
    rest = n - ell
    total = 0
    for j in range(rest + 1):
        ways = math.comb(j + m - 1, h - 1)
        if not ways:
            continue
        # C(j+m-1, h-1) > 0 forces j+m-h >= 0
        total += math.comb(rest, j) * ell ** (rest - j) * ways * rest ** (j + m - h)
    return math.prod(shape.component_sizes) * total


def multinomial(total: int, parts: Sequence[int]) -> int:
    """``total! / prod(parts!)``, or 0 when a part is negative or the parts do not sum up."""
    if any(p < 0 for p in parts) or sum(parts) != total or total < 0:
        return 0
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


def trees_with_independent_set_and_degrees(n: int, m: int, d: Sequence[int]) -> int:
    """Trees on ``[n]`` with ``{1..m}`` independent and degree sequence ``d``."""
    d = tuple(d)
    if len(d) != n:
        raise ValueError(f"degree sequence must have length n={n}")
    if any(x < 1 for x in d):
        raise ValueError("degrees must be positive")
    if sum(d) != 2 * (n - 1):
        raise ValueError(f"degrees of a tree on {n} vertices sum to {2 * (n - 1)}, got {sum(d)}")
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got {m}")
    head = sum(d[:m])
    first = multinomial(n - m - 1, [x - 1 for x in d[:m]] + [n - 1 - head])
    if not first:
        return 0
    return first * multinomial(n + m - 2 - head, [x - 1 for x in d[m:]])


def as_rational(p, max_denominator: int = 10**9) -> Fraction:
    """Exact rational for ``p``; floats are approximated and the error is reported as a warning."""
    if isinstance(p, Rational):
        return Fraction(p)
    if isinstance(p, str):
        return Fraction(p)
    exact = Fraction(p).limit_denominator(max_denominator)
    err = abs(float(exact) - float(p))
    warnings.warn(f"float p={p!r} replaced by rational {exact} (|error| = {err:.3g})", stacklevel=2)
    return exact


def _check_moment_args(n, k, p):
    _check_int("n", n, 1)
    _check_int("k", k, 1)
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    p = as_rational(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return p


def expected_induced_trees(n: int, k: int, p, delta: int) -> Fraction:
    """``E Y_k = C(n,k) (1-p)**(C(k,2)-(k-1)) p**(k-1) t_delta(k)`` for ``G(n, p)``."""
    p = _check_moment_args(n, k, p)
    t = 1 if k == 1 else trees_bounded_degree_exact(k, delta)
    return math.comb(n, k) * (1 - p) ** (math.comb(k, 2) - (k - 1)) * p ** (k - 1) * t


def expected_induced_rooted_forests(n: int, k: int, p, delta: int) -> Fraction:
    """``E Z_k = C(n,k) sum_m f_delta(k,m) p**(k-m) (1-p)**(C(k,2)-k+m)``."""
    p = _check_moment_args(n, k, p)
    pairs = math.comb(k, 2)
    total = sum(
        (f * p ** (k - m) * (1 - p) ** (pairs - k + m)
         for m, f in enumerate(rooted_forest_counts(k, delta), start=1)),
        Fraction(0),
    )
    return math.comb(n, k) * total


def component_count_feasible(k: int, ell: int, m: int, delta: int) -> bool:
    """Whether a tree on ``k`` vertices with max degree ``delta`` can contain an
    induced forest on ``ell`` vertices with ``m`` components."""
    if not 0 <= ell <= k:
        raise ValueError(f"need 0 <= ell <= k, got ell={ell}, k={k}")
    return m <= 1 + (k - ell) * (delta - 1)


def rooted_forest_bounds_diagnostic(n: int, delta: int) -> list[dict]:
    """Per-``m`` ratio of ``f_delta(n,m)`` to ``(a/e)**n C(n-1,m-1) n**(n-m)`` and its m-th root."""
    _check_int("delta", delta, 3)
    consts = solve_alpha(delta)
    log_scale = n * (math.log(consts.a) - 1.0)
    rows = []
    for m, f in enumerate(rooted_forest_counts(n, delta), start=1):
        log_ratio = math.log(f) - log_scale - math.log(math.comb(n - 1, m - 1)) - (n - m) * math.log(n)
        rows.append({
            "n": n,
            "m": m,
            "delta": delta,
            "count": f,
            "log_ratio": log_ratio,
            "ratio": math.exp(log_ratio) if log_ratio < 700 else math.inf,
            "root": math.exp(log_ratio / m),
        })
    return rows


def _check_enumeration(n):
    _check_int("n", n, 1)
    if n > ENUMERATION_CAP:
        raise CapExceededError(f"n={n} exceeds the exhaustive-enumeration cap {ENUMERATION_CAP}")


def enumerate_all_trees(n: int) -> Iterator[LabeledTree]:
    """All ``n**(n-2)`` labelled trees on ``[n]``, via their Prüfer codes."""
    _check_enumeration(n)
    if n == 1:
        yield LabeledTree(1, ())
        return
    for code in product(range(1, n + 1), repeat=n - 2):
        yield decode_tree(code, n)


def enumerate_all_rooted_forests(n: int, m: int) -> Iterator[LabeledRootedForest]:
    """All ``C(n-1,m-1) n**(n-m)`` rooted forests on ``[n]`` with ``m`` trees."""
    _check_enumeration(n)
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    from itertools import combinations

    for roots in combinations(range(1, n + 1), m):
        if m == n:
            yield decode_rooted_forest(ForestCode(roots, (), roots[0]), n)
            continue
        for tail in roots:
            for body in product(range(1, n + 1), repeat=n - 1 - m):
                yield decode_rooted_forest(ForestCode(roots, body, tail), n)
