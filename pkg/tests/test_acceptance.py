"""End-to-end acceptance checks, one test per criterion.

Each test runs the matching oracle check, prints a PASS/FAIL line to the
terminal, then asserts the stated tolerances on the reported quantities.
"""

import math

import pytest

from inducedforests import verification as v


@pytest.fixture
def report(capsys):
    def emit(result):
        with capsys.disabled():
            print(f"\n{result.line()}")
        return result

    return emit


def test_criterion_01_codec_bijections(report):
    r = report(v.check_codecs(n_max=7))
    assert r.details["failures"] == []
    assert r.details["tree_counts"]["trees n=7"] == 7 ** 5
    assert r.seconds < 60
    assert r.passed


def test_criterion_02_exact_counts(report):
    r = report(v.check_counts(tree_n_max=8, forest_n_max=7, containing_n_max=7, degree_n_max=6))
    assert r.details["failures"] == []
    assert r.details["checked"] > 0
    assert r.seconds < 600
    assert r.passed


def test_criterion_03_constants(report):
    r = report(v.check_constants(delta_max=30, tol=1e-10))
    d = r.details
    assert abs(d["alpha_3"] - math.sqrt(2)) < 1e-10
    assert abs(d["a_3"] - (1 + math.sqrt(2))) < 1e-10
    assert abs(d["a_4"] - d["a_4_cubic"]) < 1e-10
    assert d["min_e_minus_a"] > 0
    assert all(d["checks"].values())
    assert r.passed


def test_criterion_04_probability_identity(report):
    r = report(v.check_probability_identity(n_max=50, rel=1e-8))
    assert r.details["max_rel_vs_exact"] < 1e-8
    assert r.details["max_rel_across_alpha"] < 1e-8
    assert r.passed


def test_criterion_05_weighted_identity(report):
    r = report(v.check_weighted_identity(n_max=40))
    assert r.details["mismatches"] == []
    assert r.passed


def test_criterion_06_saddle_grid(report):
    r = report(v.check_saddle_grid())
    d = r.details
    assert d["max_residual"] < 1e-12
    assert 1e-3 <= d["beta_min"] and d["beta_max"] <= 10
    assert r.passed


def test_criterion_07_convergence(report):
    r = report(v.check_convergence(ns=(100, 200, 400), delta=3, bound=0.05))
    for key in ("tree_rel_error", "forest_rel_error"):
        errs = r.details[key]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 0.05
    assert r.seconds < 300
    assert r.passed


def test_criterion_08_search_exactness(report):
    r = report(v.check_search(count=200, n_max=16))
    assert r.details["graphs"] == 200
    assert r.details["mismatches"] == []
    assert r.passed


def test_criterion_09_moments(report):
    r = report(v.check_moments(n_max=5, stat_n=60, stat_k=5, trials=2000, z_bound=4.0))
    assert r.details["exact_mismatches"] == []
    assert all(abs(z) <= 4 for z in r.details["z_scores"].values())
    assert r.passed


def test_criterion_10_concentration(report):
    r = report(v.check_concentration(n=150, p=0.5, delta=3, trials=30, slack=2))
    d = r.details
    lo, hi = d["window"]
    for key in ("observed_T", "observed_F"):
        assert all(lo - 2 <= x <= hi + 2 for x in d[key])
    assert all(t <= f <= u for t, f, u in zip(d["observed_T"], d["observed_F"], d["observed_F_unbounded"]))
    assert d["window_n200"] == d["window_n200_reference"] == [17, 18]
    assert r.seconds < 1800
    assert r.passed
