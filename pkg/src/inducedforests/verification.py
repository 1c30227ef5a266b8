"""Brute-force oracle suites behind ``inducedforests verify``.

Each ``check_*`` function runs one end-to-end check and returns a
``CheckResult`` holding the measured quantities and whether they meet the
stated tolerance.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from . import asymptotics as asy
from . import exact
from .gamma import a_delta_sequence, gamma_eval, solve_alpha
from .prufer import (
    ForestCode,
    IndependentSetTreeCode,
    decode_rooted_forest,
    decode_tree,
    decode_tree_with_independent_set,
    encode_rooted_forest,
    encode_tree,
    encode_tree_with_independent_set,
)
from .rg.counting import count_induced_pair
from .rg.experiments import concentration_experiment, moment_experiment
from .rg.graph import SampledGraph, sample_gnp
from .rg.search import max_induced_all

__all__ = ["CheckResult", "SUITES", "run_suite"]


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2} {self.name} ({self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "seconds": self.seconds,
        }


def _timed(number, name):
    def wrap(fn):
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            passed, details = fn(*args, **kwargs)
            return CheckResult(number, name, bool(passed), details, time.perf_counter() - t0)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


@_timed(1, "codec bijections")
def check_codecs(n_max: int = 7):
    """Round trips and cardinalities over every code for trees, rooted forests and
    trees with an independent prefix."""
    failures = []
    sizes = {}
    for n in range(2, n_max + 1):
        seen = set()
        for code in product(range(1, n + 1), repeat=n - 2):
            tree = decode_tree(code, n)
            if encode_tree(tree) != code:
                failures.append(("tree", n, code))
            seen.add(tree.edges)
        sizes[f"trees n={n}"] = len(seen)
        if len(seen) != n ** (n - 2):
            failures.append(("cayley", n, len(seen)))

        for m in range(1, n - 1):
            seen = set()
            for a in product(range(m + 1, n + 1), repeat=m - 1):
                for b in product(range(1, n + 1), repeat=n - m - 1):
                    code = IndependentSetTreeCode(m, a, b)
                    tree = decode_tree_with_independent_set(code, n)
                    if encode_tree_with_independent_set(tree, m) != code:
                        failures.append(("independent", n, m, a, b))
                    seen.add(tree.edges)
            expected = n ** (n - m - 1) * (n - m) ** (m - 1)
            if len(seen) != expected:
                failures.append(("independent count", n, m, len(seen), expected))

    for n in range(1, n_max + 1):
        for m in range(1, n + 1):
            seen = set()
            for roots in combinations(range(1, n + 1), m):
                if m == n:
                    codes = [ForestCode(roots, (), roots[0])]
                else:
                    codes = (ForestCode(roots, body, tail) for tail in roots
                             for body in product(range(1, n + 1), repeat=n - m - 1))
                for code in codes:
                    forest = decode_rooted_forest(code, n)
                    if encode_rooted_forest(forest) != code:
                        failures.append(("forest", n, m, code))
                    seen.add((forest.edges, forest.roots))
            expected = math.comb(n - 1, m - 1) * n ** (n - m)
            if len(seen) != expected:
                failures.append(("forest count", n, m, len(seen), expected))
    return not failures, {"failures": failures[:10], "tree_counts": sizes}


def _partitions(total, largest=None):
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def _shape_forests(shape):
    """Two concrete forests on {1..l} with the given component sizes: paths and stars."""
    paths, stars = [], []
    first = 1
    for size in shape:
        block = list(range(first, first + size))
        paths += [(block[i], block[i + 1]) for i in range(size - 1)]
        stars += [(block[0], v) for v in block[1:]]
        first += size
    return frozenset(paths), frozenset(stars)


def _restrict(edges, ell):
    return frozenset(e for e in edges if e[1] <= ell)


@_timed(2, "exact counts against brute force")
def check_counts(tree_n_max: int = 8, forest_n_max: int = 7, containing_n_max: int = 7, degree_n_max: int = 6):
    failures = []
    checked = 0
    # bounded-degree trees, from the degrees of every decoded tree
    for n in range(2, tree_n_max + 1):
        max_degrees = Counter(tree.max_degree() for tree in exact.enumerate_all_trees(n))
        for delta in (3, 4, 5, 6):
            brute = sum(c for d, c in max_degrees.items() if d <= delta)
            checked += 1
            if brute != exact.trees_bounded_degree_exact(n, delta):
                failures.append(("t", n, delta))
    # bounded-degree rooted forests
    for n in range(1, forest_n_max + 1):
        for m in range(1, n + 1):
            tally = Counter()
            for forest in exact.enumerate_all_rooted_forests(n, m):
                deg = forest.degrees()
                tally[(max(deg[1:]), max(deg[r] for r in forest.roots))] += 1
            for delta in (3, 4):
                brute = sum(c for (dmax, droot), c in tally.items() if dmax <= delta and droot <= delta - 1)
                checked += 1
                if brute != exact.rooted_forests_bounded_degree_exact(n, m, delta):
                    failures.append(("f", n, m, delta))
    # trees and rooted forests containing a fixed induced forest
    for n in range(1, containing_n_max + 1):
        trees = list(exact.enumerate_all_trees(n))
        forests = {h: list(exact.enumerate_all_rooted_forests(n, h)) for h in range(1, n + 1)}
        for ell in range(1, n + 1):
            tree_tally = Counter(_restrict(t.edges, ell) for t in trees)
            forest_tally = {h: Counter(_restrict(f.edges, ell) for f in fs) for h, fs in forests.items()}
            for shape in _partitions(ell):
                for fixed in _shape_forests(shape):
                    checked += 1
                    if tree_tally[fixed] != exact.trees_containing_forest(n, shape):
                        failures.append(("containing tree", n, shape))
                    for h in range(1, n + 1):
                        checked += 1
                        if forest_tally[h][fixed] != exact.forests_containing_forest(n, h, shape):
                            failures.append(("containing forest", n, h, shape))
    # degree sequences with an independent prefix
    for n in range(2, degree_n_max + 1):
        tally = Counter()
        for tree in exact.enumerate_all_trees(n):
            deg = tuple(tree.degrees()[1:])
            for m in range(1, n + 1):
                if all(not (u <= m and v <= m) for u, v in tree.edges):
                    tally[(m, deg)] += 1
        for m in range(1, n + 1):
            for d in product(range(1, n), repeat=n):
                if sum(d) != 2 * (n - 1):
                    continue
                checked += 1
                if tally[(m, d)] != exact.trees_with_independent_set_and_degrees(n, m, d):
                    failures.append(("degrees", n, m, d))
    return not failures, {"checked": checked, "failures": failures[:10]}


def _cubic_alpha4():
    roots = np.roots([2.0, 3.0, 0.0, -6.0])
    real = [r.real for r in roots if abs(r.imag) < 1e-12 and r.real > 0]
    return real[0]


@_timed(3, "growth constants")
def check_constants(delta_max: int = 30, tol: float = 1e-10):
    c3 = solve_alpha(3)
    alpha4 = float(_cubic_alpha4())
    a4 = float(gamma_eval(3, alpha4))
    c4 = solve_alpha(4)
    seq = a_delta_sequence(delta_max)
    gaps = [c.gap for c in seq]
    checks = {
        "alpha_3": abs(c3.alpha - math.sqrt(2)) < tol,
        "a_3": abs(c3.a - (1 + math.sqrt(2))) < tol,
        "alpha_4": bool(abs(c4.alpha - alpha4) < tol),
        "a_4": abs(c4.a - a4) < tol,
        "non_decreasing": all(x.a <= y.a for x, y in zip(seq, seq[1:])),
        "below_e": all(g > 0 for g in gaps),
    }
    details = {
        "alpha_3": c3.alpha,
        "a_3": c3.a,
        "a_4": c4.a,
        "a_4_cubic": a4,
        "min_e_minus_a": min(gaps),
        "checks": checks,
    }
    return all(checks.values()), details


def _log_int(x) -> float:
    return math.log(x)


@_timed(4, "probability identity")
def check_probability_identity(n_max: int = 50, rel: float = 1e-8):
    worst_exact = 0.0
    worst_alpha = 0.0
    for delta in (3, 4, 5):
        alpha_d = solve_alpha(delta).alpha
        for n in range(2, n_max + 1):
            log_t = _log_int(exact.trees_bounded_degree_exact(n, delta))
            values = [asy.tree_count_via_probability_identity(n, delta, a).log_value for a in (0.5, 1.0, alpha_d, 2.0)]
            worst_exact = max(worst_exact, abs(math.expm1(values[2] - log_t)))
            worst_alpha = max(worst_alpha, max(abs(math.expm1(v - values[2])) for v in values))
    return worst_exact < rel and worst_alpha < rel, {"max_rel_vs_exact": worst_exact, "max_rel_across_alpha": worst_alpha}


@_timed(5, "weighted forest identity")
def check_weighted_identity(n_max: int = 40):
    mismatches = []
    for delta in (3, 4):
        for w in (Fraction(1), Fraction(1, 2), Fraction(2)):
            for n in range(1, n_max + 1):
                if exact.weighted_forest_sum_direct(n, w, delta) != exact.weighted_forest_sum_coefficient(n, w, delta):
                    mismatches.append((n, str(w), delta))
    return not mismatches, {"mismatches": mismatches}


def saddle_grid():
    ns = sorted({int(round(x)) for x in np.logspace(1, 4, 31)})
    return [(n, w, d) for n in ns for w in (1.0, math.sqrt(n), n / 2) for d in (3, 4, 5)]


@_timed(6, "saddle-point contracts")
def check_saddle_grid():
    worst_res = 0.0
    beta_lo, beta_hi = math.inf, -math.inf
    bracket_ok = True
    for n, w, d in saddle_grid():
        sp = asy.solve_saddle_point(n, w, d)
        worst_res = max(worst_res, abs(sp.residual))
        bracket_ok &= 0 < sp.r < min(2.0, n / w)
        beta_lo = min(beta_lo, sp.beta)
        beta_hi = max(beta_hi, sp.beta)
    passed = worst_res < 1e-12 and bracket_ok and 1e-3 <= beta_lo and beta_hi <= 10
    return passed, {"max_residual": worst_res, "beta_min": beta_lo, "beta_max": beta_hi, "points": len(saddle_grid())}


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


@_timed(7, "asymptotic convergence")
def check_convergence(ns=(100, 200, 400), delta: int = 3, bound: float = 0.05):
    cap = max(ns)
    tree_err, forest_err = [], []
    for n in ns:
        t = exact.trees_bounded_degree_exact(n, delta, cap=cap)
        tree_err.append(abs(math.expm1(asy.tree_count_asymptotic(n, delta).log_value - _log_int(t))))
        s = exact.weighted_forest_sum_exact(n, 1, delta, cap=cap)
        forest_err.append(abs(math.expm1(asy.weighted_forest_sum_asymptotic(n, 1.0, delta).log_value - _log_fraction(s))))

    def ok(errs):
        return all(a > b for a, b in zip(errs, errs[1:])) and errs[-1] < bound

    return ok(tree_err) and ok(forest_err), {"n": list(ns), "tree_rel_error": tree_err, "forest_rel_error": forest_err}


def search_cases(count: int = 200, n_max: int = 16, seed: int = 8):
    rng = np.random.default_rng(seed)
    ps = (0.2, 0.5, 0.8)
    cases = []
    for i in range(count):
        n = int(rng.integers(1, n_max + 1))
        cases.append((n, ps[i % 3], (3, 4)[(i // 3) % 2], int(rng.integers(0, 2**63))))
    return cases


@_timed(8, "search exactness")
def check_search(count: int = 200, n_max: int = 16):
    mismatches = []
    for n, p, delta, seed in search_cases(count, n_max):
        g = sample_gnp(n, p, seed)
        oracle = max_induced_all(g, delta, strategy="exhaustive")
        for strategy in ("bipartite", "inclusion"):
            got = max_induced_all(g, delta, strategy=strategy)
            for key in ("tree", "forest"):
                if got[key].size != oracle[key].size:
                    mismatches.append((n, p, delta, seed, strategy, key, got[key].size, oracle[key].size))
    return not mismatches, {"graphs": count, "mismatches": mismatches[:10]}


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
        yield len(edges), SampledGraph.from_edges(n, edges)


@_timed(9, "moment cross-validation")
def check_moments(n_max: int = 5, p=Fraction(1, 2), stat_n: int = 60, stat_k: int = 5, trials: int = 2000,
                  seed: int = 20240601, z_bound: float = 4.0, deltas=(2, 3)):
    mismatches = []
    for n in range(1, n_max + 1):
        pairs = math.comb(n, 2)
        graphs = [(e, g) for e, g in all_graphs(n)]
        for delta in deltas:
            for k in range(1, n + 1):
                ey = ez = Fraction(0)
                for e, g in graphs:
                    weight = p ** e * (1 - p) ** (pairs - e)
                    y, z = count_induced_pair(g, k, delta)
                    ey += weight * y
                    ez += weight * z
                if ey != exact.expected_induced_trees(n, k, p, delta) or \
                        ez != exact.expected_induced_rooted_forests(n, k, p, delta):
                    mismatches.append((n, k, delta))
    _, summary = moment_experiment(stat_n, stat_k, p, 3, trials, seed)
    zs = {name: s.z_score for name, s in summary.items()}
    passed = not mismatches and all(abs(z) <= z_bound for z in zs.values())
    details = {"exact_mismatches": mismatches, "z_scores": zs,
               "summary": {k: v.to_dict() for k, v in summary.items()}}
    return passed, details


def _window_from_formula(n, p, a):
    c = 2 * math.log(a * n * p) / math.log(1 / (1 - p))
    return math.ceil(c + 1), math.ceil(c + 2)


@_timed(10, "concentration diagnostic")
def check_concentration(n: int = 150, p: float = 0.5, delta: int = 3, trials: int = 30, seed: int = 20240601,
                        slack: int = 2, jobs: int = 1):
    reference = _window_from_formula(200, 0.5, 1 + math.sqrt(2))
    computed = asy.concentration_window_dense(200, 0.5, 3).window_dense
    records, summary, pred = concentration_experiment(n, p, delta, trials, seed, slack=slack, jobs=jobs)
    passed = (
        summary.inside_slack_T == 1.0
        and summary.inside_slack_F == 1.0
        and summary.sandwich_holds
        and tuple(computed) == reference
    )
    details = summary.to_dict()
    details.update({"window_n200": list(computed), "window_n200_reference": list(reference),
                    "observed_T": [r.observed["T"] for r in records],
                    "observed_F": [r.observed["F"] for r in records],
                    "observed_F_unbounded": [r.observed["F_unbounded"] for r in records]})
    return passed, details


SUITES = {
    "codecs": [check_codecs],
    "counts": [check_counts, check_weighted_identity, check_moments],
    "asymptotics": [check_constants, check_probability_identity, check_saddle_grid, check_convergence],
    "search": [check_search, check_concentration],
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        checks = [c for suite in SUITES.values() for c in suite]
        return [fn() for fn in sorted(checks, key=_number)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return [fn() for fn in SUITES[name]]


_ORDER = {
    check_codecs: 1, check_counts: 2, check_constants: 3, check_probability_identity: 4,
    check_weighted_identity: 5, check_saddle_grid: 6, check_convergence: 7, check_search: 8,
    check_moments: 9, check_concentration: 10,
}


def _number(fn) -> int:
    return _ORDER[fn]
