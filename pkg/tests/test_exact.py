from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from subtree_mean.exact import (
    IntPolynomial,
    UndefinedMeanError,
    deriv_at_one,
    eval_at_one,
    log_deriv_at_one,
    poly_add,
    poly_mul,
    rational_cmp,
    rational_from_str,
    rational_to_str,
    to_decimal,
)
from subtree_mean.families import cycle_edge_polynomial

X = IntPolynomial([0, 1])
ONE_PLUS_X = IntPolynomial([1, 1])

nonneg_polys = st.lists(st.integers(0, 10**6), min_size=1, max_size=12).map(IntPolynomial)
nonzero_polys = nonneg_polys.filter(lambda p: eval_at_one(p) > 0)


def test_products():
    assert X * X == IntPolynomial([0, 0, 1])
    assert ONE_PLUS_X * ONE_PLUS_X == IntPolynomial([1, 2, 1])
    assert poly_mul(IntPolynomial(), X) == IntPolynomial()


def test_trailing_zeros_trimmed():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPolynomial([0, 0]).degree == -1


@pytest.mark.parametrize("n,s", [(9, 2), (12, 3), (7, 0), (40, 10)])
def test_broom_local_product_at_one(n, s):
    local = ONE_PLUS_X ** (2 * s) * cycle_edge_polynomial(n - 2 * s)
    assert eval_at_one(local) == comb(n - 2 * s, 2) * 2 ** (2 * s)


def test_eval_and_deriv():
    p3 = IntPolynomial([0, 3, 2, 1])
    assert (eval_at_one(p3), deriv_at_one(p3)) == (6, 10)
    assert (eval_at_one(IntPolynomial()), deriv_at_one(IntPolynomial())) == (0, 0)
    c5 = cycle_edge_polynomial(5)
    assert eval_at_one(c5) == comb(5, 2)
    assert deriv_at_one(c5) == 5 * 4 * 12 // 6


@pytest.mark.parametrize("k", range(0, 12))
def test_log_deriv_of_geometric(k):
    assert log_deriv_at_one(IntPolynomial.geometric(k)) == Fraction(k, 2)


@pytest.mark.parametrize("m", range(0, 6))
def test_log_deriv_of_monomial(m):
    assert log_deriv_at_one(IntPolynomial.monomial(m)) == m


def test_log_deriv_undefined():
    with pytest.raises(UndefinedMeanError):
        log_deriv_at_one(IntPolynomial())


@given(nonzero_polys, nonzero_polys)
def test_log_deriv_is_additive_over_products(p, q):
    assert log_deriv_at_one(p * q) == log_deriv_at_one(p) + log_deriv_at_one(q)


@given(nonneg_polys, nonneg_polys)
def test_eval_deriv_linear(p, q):
    assert eval_at_one(poly_add(p, q)) == eval_at_one(p) + eval_at_one(q)
    assert deriv_at_one(p + q) == deriv_at_one(p) + deriv_at_one(q)


@given(st.integers(-10**9, 10**9), st.integers(1, 10**6), st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_rational_sum_cross_multiplication(a, b, c, d):
    s = Fraction(a, b) + Fraction(c, d)
    assert s.numerator * b * d == (a * d + c * b) * s.denominator


def test_rational_cmp():
    assert rational_cmp(Fraction(1, 3), Fraction(2, 6)) == 0
    assert rational_cmp(Fraction(2), Fraction(5, 3)) == 1
    assert rational_cmp(Fraction(-52, 88385), Fraction(0)) == -1


def test_to_decimal():
    assert to_decimal(Fraction(1, 3), 6) == "0.333333"
    assert to_decimal(Fraction(5, 3), 4) == "1.6667"
    assert to_decimal(Fraction(-52, 88385), 6) == "-0.000588"
    assert to_decimal(Fraction(1, 8), 2) == "0.12"  # tie goes to even
    assert to_decimal(Fraction(3, 8), 2) == "0.38"
    assert to_decimal(Fraction(-1, 3000), 2) == "0.00"


@given(st.fractions(), st.integers(1, 12))
def test_to_decimal_round_trip(x, digits):
    back = Fraction(to_decimal(x, digits))
    assert abs(back - x) <= Fraction(1, 2 * 10**digits)


def test_rational_serialisation():
    assert rational_to_str(Fraction(2)) == "2/1"
    assert rational_from_str("-52/88385") == Fraction(-52, 88385)
