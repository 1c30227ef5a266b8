from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inducedforests.series import SeriesCoefficients

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
coeff_lists = st.lists(fractions, min_size=1, max_size=12)


def naive_product(a, b, max_degree=None):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out if max_degree is None else out[:max_degree + 1]


@given(coeff_lists, coeff_lists, st.one_of(st.none(), st.integers(0, 15)))
def test_multiply_matches_schoolbook(a, b, cut):
    got = SeriesCoefficients.from_fractions(a).multiply(SeriesCoefficients.from_fractions(b), cut)
    want = naive_product(a, b, cut)
    assert got.coefficients() == want


@given(st.lists(st.integers(0, 10**30), min_size=1, max_size=20), st.lists(st.integers(0, 10**30), min_size=1, max_size=20))
def test_packed_product_for_large_nonnegative_integers(a, b):
    got = SeriesCoefficients(tuple(a)) * SeriesCoefficients(tuple(b))
    assert got.coefficients() == naive_product([Fraction(x) for x in a], [Fraction(x) for x in b])


@given(st.lists(st.fractions(min_value=0, max_value=3, max_denominator=7), min_size=1, max_size=5),
       st.integers(0, 8), st.integers(0, 12))
def test_power_matches_repeated_multiplication(a, e, cut):
    s = SeriesCoefficients.from_fractions(a)
    want = SeriesCoefficients((1,))
    for _ in range(e):
        want = want.multiply(s, cut)
    assert s.power(e, cut).coefficients() == want.truncate(cut).coefficients()


def test_indexing_and_helpers():
    s = SeriesCoefficients.from_fractions([Fraction(1, 2), 0, Fraction(3, 4)])
    assert s.denominator == 4
    assert s[2] == Fraction(3, 4)
    assert s[7] == 0 and s[-1] == 0
    assert s.max_degree == 2
    assert s.shift(2)[4] == Fraction(3, 4)
    assert SeriesCoefficients.monomial(3, Fraction(2, 5))[3] == Fraction(2, 5)
    r = SeriesCoefficients((2, 4, 6), 4).reduced()
    assert (r.numerators, r.denominator) == ((1, 2, 3), 2)
    with pytest.raises(ValueError):
        SeriesCoefficients((1,), 0)
    with pytest.raises(ValueError):
        s.power(-1, 3)


def test_binomial_row():
    row = SeriesCoefficients((1, 1)).power(10, 10)
    assert row.numerators == (1, 10, 45, 120, 210, 252, 210, 120, 45, 10, 1)
