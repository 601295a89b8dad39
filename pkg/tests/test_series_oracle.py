from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lbern.exact_scalar import LambdaDescriptor, LogPolynomial
from lbern.series_oracle import (
    Barnes,
    NonInvertibleConstantTerm,
    OrderOne,
    OrderR,
    TruncatedSeries,
    expand_gf,
    factor_t,
    lambda_factor,
    series_div,
    series_mul,
)

small = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def series(draw_list):
    return TruncatedSeries(draw_list)


coeff_lists = st.lists(small, min_size=9, max_size=9)


def test_exp_products():
    K = 10
    e = TruncatedSeries.exp(1, K)
    assert series_mul(e, e) == TruncatedSeries.exp(2, K)
    one = TruncatedSeries.one(K)
    assert series_mul(one, e) == e


def test_bernoulli_square():
    K = 4
    b = lambda_factor(LambdaDescriptor.one(), 1, K)
    assert (b * b)[2] == Fraction(5, 6)


def test_lambda_two_division():
    f = expand_gf(OrderOne(LambdaDescriptor.rational(2)), 2)
    L = LogPolynomial.L()
    assert list(f.coeffs) == [L, 1 - 2 * L, -4 + 6 * L]


def test_classical_after_cancellation():
    f = expand_gf(OrderOne(LambdaDescriptor.one()), 6)
    assert [c.scalar() for c in f.coeffs] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]


def test_uncancelled_division_is_rejected():
    num = TruncatedSeries([0, 1, 0, 0])
    den = TruncatedSeries([0, 1, 1, 1])
    with pytest.raises(NonInvertibleConstantTerm):
        series_div(num, den)
    with pytest.raises(NonInvertibleConstantTerm):
        factor_t(TruncatedSeries([1, 1]))
    with pytest.raises(NonInvertibleConstantTerm):
        series_div(num, TruncatedSeries([LogPolynomial.L(), 1, 0, 0]))


@given(coeff_lists, coeff_lists, coeff_lists)
def test_mul_commutative_associative(a, b, c):
    f, g, h = series(a), series(b), series(c)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)


@given(coeff_lists, coeff_lists)
def test_div_inverts_mul(a, b):
    f, g = series(a), series(b)
    if g[0].is_zero():
        return
    assert series_div(series_mul(f, g), g) == f


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3, 2), Fraction(-5), Fraction(1, 3)])
def test_order_one_matches_sympy_series(q):
    t, L = sympy.symbols("t L")
    lam = sympy.Rational(q.numerator, q.denominator)
    K = 7
    expr = (L + t) / (lam * sympy.exp(t) - 1)
    ser = sympy.series(expr, t, 0, K + 1).removeO()
    f = expand_gf(OrderOne(LambdaDescriptor.rational(q)), K)
    for n in range(K + 1):
        want = sympy.expand(ser.coeff(t, n) * sympy.factorial(n))
        got = sum(sympy.Rational(c.numerator, c.denominator) * L**i for i, c in enumerate(f[n].coeffs))
        assert sympy.simplify(want - got) == 0, n


def test_order_r_one_is_order_one():
    for lam in (LambdaDescriptor.rational(2), LambdaDescriptor.root_of_unity(3, 1), LambdaDescriptor.one()):
        x = Fraction(1, 3)
        assert expand_gf(OrderR(lam, 1, x), 8) == expand_gf(OrderOne(lam, x), 8)


def test_barnes_unit_weights_equal_order_r():
    for lam in (LambdaDescriptor.rational(Fraction(3, 2)), LambdaDescriptor.root_of_unity(4, 1)):
        assert expand_gf(Barnes(lam, (1, 1, 1)), 8) == expand_gf(OrderR(lam, 3), 8)


def test_kronecker_root_of_unity():
    K = 10
    for lam in (LambdaDescriptor.root_of_unity(2, 1), LambdaDescriptor.root_of_unity(5, 2)):
        v = lam.value
        den = TruncatedSeries([v - 1] + [v] * K)
        for r in (1, 2, 3, 4):
            prod = den**r * expand_gf(OrderR(lam, r), K)
            assert prod == TruncatedSeries.t_power(r, K)


def test_barnes_weight_scaling_against_sympy():
    # weight (2,) at lambda = 3: (2 log 3 + 2t)/(9 e^{2t} - 1) with log 3 = L
    t, L = sympy.symbols("t L")
    expr = (2 * L + 2 * t) / (9 * sympy.exp(2 * t) - 1)
    ser = sympy.series(expr, t, 0, 6).removeO()
    f = expand_gf(Barnes(LambdaDescriptor.rational(3), (2,)), 5)
    for n in range(6):
        want = sympy.expand(ser.coeff(t, n) * sympy.factorial(n))
        got = sum(sympy.Rational(c.numerator, c.denominator) * L**i for i, c in enumerate(f[n].coeffs))
        assert sympy.simplify(want - got) == 0
