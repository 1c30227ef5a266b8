import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inducedforests import asymptotics as asy
from inducedforests import exact


@given(st.integers(0, 3000))
def test_log_factorial_matches_lgamma(n):
    assert asy.log_factorial(n) == pytest.approx(math.lgamma(n + 1), rel=1e-14, abs=1e-14)


def test_log_factorial_rejects_negative():
    with pytest.raises(ValueError):
        asy.log_factorial(-1)


def _bisect(f, lo, hi):
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_saddle_point_small_case_independent():
    def h(x):
        return x * (1 + x) / (1 + x + x * x / 2) + x / 100 - 1

    sp = asy.solve_saddle_point(100, 1, 3)
    assert sp.r == pytest.approx(_bisect(h, 1e-9, 2.0), abs=1e-12)
    assert abs(sp.residual) < 1e-12


@given(st.integers(2, 10000), st.integers(2, 8))
def test_saddle_with_w_equal_n_is_below_one(n, delta):
    assert asy.solve_saddle_point(n, n, delta).r < 1


@given(st.integers(10, 10000), st.sampled_from(["one", "sqrt", "half"]), st.integers(3, 5))
def test_saddle_contract(n, which, delta):
    w = {"one": 1.0, "sqrt": math.sqrt(n), "half": n / 2}[which]
    sp = asy.solve_saddle_point(n, w, delta)
    assert 0 < sp.r < min(2, n / w)
    assert abs(sp.residual) < 1e-12
    assert 1e-3 <= sp.beta <= 10


def test_saddle_argument_checks():
    with pytest.raises(ValueError):
        asy.solve_saddle_point(10, 0, 3)
    with pytest.raises(ValueError):
        asy.solve_saddle_point(10, 1, 1)
    with pytest.raises(ValueError):
        asy.weighted_forest_sum_asymptotic(10, 11, 3)
    with pytest.raises(ValueError):
        asy.tree_count_asymptotic(10, 2)


def test_tree_count_asymptotic_error_shrinks():
    errs = []
    for n in (50, 100, 200):
        est = asy.tree_count_asymptotic(n, 3)
        errs.append(abs(math.exp(est.log_value - math.log(exact.trees_bounded_degree_exact(n, 3))) - 1))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.02


def test_weighted_sum_asymptotic_error_shrinks():
    errs = []
    for n in (50, 100, 200):
        est = asy.weighted_forest_sum_asymptotic(n, 1, 3)
        s = exact.weighted_forest_sum_exact(n, 1, 3)
        errs.append(abs(math.exp(est.log_value - math.log(s.numerator) + math.log(s.denominator)) - 1))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.01


@pytest.mark.parametrize("delta", [3, 4, 5])
@pytest.mark.parametrize("alpha", [None, 0.5, 1.0, 2.0])
def test_probability_identity_is_exact(delta, alpha):
    for n in (5, 17, 40):
        est = asy.tree_count_via_probability_identity(n, delta, alpha)
        assert est.log_value == pytest.approx(math.log(exact.trees_bounded_degree_exact(n, delta)), rel=1e-10)


def test_probability_identity_rejects_bad_alpha():
    with pytest.raises(ValueError):
        asy.tree_count_via_probability_identity(10, 3, 0.0)


def test_estimates_serialise():
    d = asy.weighted_forest_sum_asymptotic(30, 2, 4).to_dict()
    assert d["formula_id"] == "weighted_forest_sum"
    assert d["r"] > 0 and d["beta"] > 0


def test_dense_window_reference_point():
    pred = asy.concentration_window_dense(200, 0.5, 3)
    c = 2 * math.log2(200 * 0.5 * (1 + math.sqrt(2)))
    assert pred.centre == pytest.approx(c)
    assert pred.window_dense == (17, 18) == (math.ceil(c + 1), math.ceil(c + 2))
    assert pred.lower_level == math.ceil(c + 3 - 0.1)


def test_unbounded_window_uses_e():
    pred = asy.concentration_window_dense(200, 0.5, 3, unbounded=True)
    assert pred.growth == math.e
    assert pred.window_dense[0] >= asy.concentration_window_dense(200, 0.5, 3).window_dense[0]


def test_sparse_window_formula():
    pred = asy.concentration_window_sparse(10 ** 4, 0.01, 3, 0.1)
    a = asy.concentration_window_dense(10 ** 4, 0.01, 3).growth
    lq = -math.log1p(-0.01)
    lo = math.floor(2 * math.log(a * 100 * 0.9) / lq + 3)
    hi = math.ceil(2 * math.log(a * 100 * 1.1) / lq + 3)
    assert pred.window_sparse == (lo, hi)


@given(st.floats(0.01, 0.99), st.integers(10, 10 ** 6))
def test_sparse_window_shrinks_with_epsilon(p, n):
    wide = asy.concentration_window_sparse(n, p, 3, 0.5).window_sparse
    narrow = asy.concentration_window_sparse(n, p, 3, 1e-9).window_sparse
    assert wide[0] <= narrow[0] <= narrow[1] <= wide[1]
    assert narrow[1] - narrow[0] <= 2


def test_window_argument_checks():
    with pytest.raises(ValueError):
        asy.concentration_window_dense(100, 1.0, 3)
    with pytest.raises(ValueError):
        asy.concentration_window_sparse(100, 0.5, 3, 1.5)
    with pytest.raises(ValueError):
        asy.concentration_window_dense(100, 0.5, 2)
