from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cantordist.genfunc import Poly, RationalGF, Series, Z, gf_coefficients, gf_sum, series_ops
from cantordist.exactnum import PHI

coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=6)


def test_geometric():
    assert list(gf_coefficients(RationalGF(1, [1, -2]), 6)) == [1, 2, 4, 8, 16, 32, 64]


def test_fibonacci_family():
    assert list(RationalGF([1, 1], [1, -1, -1]).coefficients(6)) == [1, 2, 3, 5, 8, 13, 21]
    g = RationalGF(Z, Poly([1, -1, -1]) ** 2)
    assert list(g.coefficients(5)) == [0, 1, 2, 5, 10, 20]


def test_multus_counting_series():
    g = RationalGF([1, -1, 1], [1, -2, 1, -1])
    assert list(g.coefficients(5)) == [1, 1, 2, 4, 7, 12]


def test_non_unit_constant_term():
    g = RationalGF([1], [2, -1])
    assert list(g.coefficients(3)) == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)]


def test_zero_constant_term_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalGF(1, [0, 1])
    with pytest.raises(ValueError):
        gf_coefficients(RationalGF(1, [1, -1]), -1)


@given(coeff_lists, coeff_lists)
def test_series_times_denominator_recovers_numerator(p, q):
    q = [1] + q
    n = 12
    c = gf_coefficients(RationalGF(p, q), n)
    qs = Series(q + [0] * (n + 1 - len(q)))[: n + 1]
    prod = series_ops(c, Series(qs), "mul")
    expect = p + [0] * (n + 1)
    assert list(prod) == expect[: n + 1]


@given(coeff_lists, coeff_lists)
def test_poly_arithmetic(p, q):
    a, b = Poly(p), Poly(q)
    for x in (0, 1, -2, Fraction(1, 3)):
        assert (a * b)(x) == a(x) * b(x)
        assert (a - b)(x) == a(x) - b(x)
    assert (a + b) - b == a


def test_poly_evaluates_on_field_elements():
    assert Poly([-1, -1, 1])(PHI) == 0
    assert Poly([1, 2, 3]).derivative() == Poly([2, 6])
    assert Poly.from_terms({3: 1, 0: 2}) == Poly([2, 0, 0, 1])
    assert Poly([1, 0, 0]).degree == 0


def test_gf_sum_and_series_ops():
    s = gf_sum([RationalGF(1, [1, -1]), RationalGF(1, [1, -2])], 3)
    assert list(s) == [2, 3, 5, 9]
    a = Series([1, 1, 1])
    assert list(a + Series([1, 2])) == [2, 3]
    assert list(a * a) == [1, 2, 3]
    with pytest.raises(ValueError):
        series_ops(a, a, "div")
