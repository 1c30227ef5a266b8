import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from inducedforests.gamma import GammaPolynomial, a_delta_sequence, gamma_eval, solve_alpha

# 50-digit roots of x*gamma_{d-1}(x) = gamma_d(x), from mpmath.findroot
ALPHA_REFERENCE = {
    3: 1.4142135623730950488,
    4: 1.0786168885087585968,
    5: 1.0164224592162271328,
    6: 1.0031155832390071783,
    10: 1.0000010137864824118,
}
A_REFERENCE = {
    3: 2.4142135623730950488,
    4: 2.6603240845969164834,
    5: 2.7079932500557299762,
    6: 2.7166536989624364005,
    10: 2.7182815255717953784,
}
GAP_REFERENCE = {10: 3.028872499e-7, 20: 4.31534743e-19, 30: 3.895519174e-33}


def test_gamma_small_values():
    assert gamma_eval(1, 5) == 1
    assert gamma_eval(3, 1) == Fraction(5, 2)
    assert gamma_eval(4, Fraction(1, 2)) == 1 + Fraction(1, 2) + Fraction(1, 8) + Fraction(1, 48)
    assert isinstance(gamma_eval(3, 2.0), float)
    assert gamma_eval(3, 2.0) == pytest.approx(5.0)


def test_gamma_rejects_bad_input():
    with pytest.raises(ValueError):
        gamma_eval(0, 1)
    with pytest.raises(ValueError):
        gamma_eval(3, -1)
    with pytest.raises(TypeError):
        gamma_eval(3.0, 1)


@given(st.integers(2, 25))
def test_derivative_is_previous_truncation(delta):
    g = GammaPolynomial(delta)
    assert g.derivative() == GammaPolynomial(delta - 1)
    assert g.derivative_coefficients() == GammaPolynomial(delta - 1).coefficients
    assert g.degree == delta - 1


@given(st.integers(1, 20), st.fractions(min_value=0, max_value=5, max_denominator=50))
def test_exact_and_float_evaluation_agree(delta, x):
    assert float(gamma_eval(delta, x)) == pytest.approx(gamma_eval(delta, float(x)), rel=1e-13)


@given(st.integers(1, 30), st.floats(0, 3))
def test_gamma_tends_to_exp(delta, x):
    assert gamma_eval(delta, x) <= math.exp(x) * (1 + 1e-15)


@pytest.mark.parametrize("delta", sorted(ALPHA_REFERENCE))
def test_alpha_against_high_precision_reference(delta):
    c = solve_alpha(delta)
    assert c.alpha == pytest.approx(ALPHA_REFERENCE[delta], abs=1e-12)
    assert c.a == pytest.approx(A_REFERENCE[delta], abs=1e-12)


@pytest.mark.parametrize("delta", sorted(GAP_REFERENCE))
def test_gap_to_e_resolved_for_large_delta(delta):
    assert solve_alpha(delta).gap == pytest.approx(GAP_REFERENCE[delta], rel=1e-6)


def test_delta_three_closed_form():
    c = solve_alpha(3)
    assert abs(c.alpha - math.sqrt(2)) < 1e-14
    assert abs(c.a - (1 + math.sqrt(2))) < 1e-14


@given(st.integers(3, 40))
def test_alpha_in_bracket_with_small_residual(delta):
    c = solve_alpha(delta)
    assert 1.0 <= c.alpha <= (delta - 1) / (delta - 2)
    assert 0 < c.alpha_minus_one <= 1 / (delta - 2)
    assert abs(c.residual) < 1e-12
    assert c.gap > 0
    assert c.tolerance <= 1e-12


def test_mpmath_gap_matches_for_mid_range():
    mpmath.mp.dps = 40
    for delta in (7, 8, 12, 15):

        def g(d, x):
            return sum(x ** k / mpmath.factorial(k) for k in range(d))

        alpha = mpmath.findroot(lambda x: x * g(delta - 1, x) - g(delta, x), 1 + mpmath.mpf(1) / (2 * (delta - 2)))
        gap = float(mpmath.e - g(delta - 1, alpha))
        assert solve_alpha(delta).gap == pytest.approx(gap, rel=1e-6)


def test_sequence_monotone_and_below_e():
    seq = a_delta_sequence(30)
    assert [c.delta for c in seq] == list(range(3, 31))
    assert all(x.a <= y.a for x, y in zip(seq, seq[1:]))
    assert all(x.gap > y.gap > 0 for x, y in zip(seq, seq[1:]))


def test_solve_alpha_argument_checks():
    with pytest.raises(ValueError):
        solve_alpha(2)
    with pytest.raises(ValueError):
        solve_alpha(3, tol=0)
    with pytest.raises(ArithmeticError):
        solve_alpha(3, tol=1e-30)


def test_constants_serialise():
    d = solve_alpha(4).as_dict()
    assert set(d) == {"delta", "alpha", "a", "tolerance", "alpha_minus_one", "e_minus_a"}
