"""Cyclotomic field, L-polynomial ring and lambda descriptors.

Cyclotomic results are checked against sympy's algebraic arithmetic
(complex embedding plus minimal polynomials), not against our own code.
"""

import cmath
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lbern.exact_scalar import (
    CyclotomicElement,
    DivisorNotScalar,
    InvalidLambda,
    LambdaDescriptor,
    LogPolynomial,
    OrderMismatch,
    ZeroInverse,
    cyclotomic_arith,
    cyclotomic_poly,
    euler_phi,
    lambda_pow,
    logpoly_arith,
    scalar_from_json,
    scalar_to_json,
)

Z = CyclotomicElement.zeta

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclo(draw, m=None):
    m = m or draw(st.integers(1, 12))
    n = euler_phi(m)
    return CyclotomicElement(m, draw(st.lists(rationals, min_size=n, max_size=n)))


def as_sympy(c: CyclotomicElement):
    z = sympy.exp(2 * sympy.pi * sympy.I / c.m)
    return sum(sympy.Rational(x.numerator, x.denominator) * z**i for i, x in enumerate(c.coeffs))


@pytest.mark.parametrize("m", range(1, 25))
def test_cyclotomic_poly_matches_sympy(m):
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(m)) == [int(c) for c in expected]


def test_spec_examples():
    assert Z(4) * Z(4) == -1
    assert Z(3).inverse() == CyclotomicElement(3, [-1, -1])
    a = 1 + Z(5)
    assert a * a.inverse() == 1


def test_zero_inverse_and_order_mismatch():
    with pytest.raises(ZeroInverse):
        CyclotomicElement(5).inverse()
    with pytest.raises(OrderMismatch):
        cyclotomic_arith(Z(3), Z(4), "add")


def test_mixed_orders_embed_to_lcm():
    # zeta_4 * zeta_6 = zeta_12^(3+2)
    assert Z(4) * Z(6) == Z(12, 5)
    assert Z(6, 2) == Z(3)
    assert (Z(6) + Z(3)).m == 6


@given(cyclo(), cyclo())
def test_product_agrees_with_sympy(a, b):
    prod = a * b
    assert abs(complex(prod) - complex(a) * complex(b)) < 1e-6 * (1 + abs(complex(a)) * abs(complex(b)))


@given(cyclo())
def test_inverse_field_axiom(a):
    if a.is_zero():
        return
    inv = a.inverse()
    assert a * inv == 1
    assert abs(complex(inv) * complex(a) - 1) < 1e-8


@given(st.integers(1, 12).flatmap(lambda m: st.tuples(cyclo(m), cyclo(m), cyclo(m))))
def test_ring_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@pytest.mark.parametrize("m", [3, 5, 7, 8, 12])
def test_minimal_polynomial_of_zeta_matches(m):
    # sympy's minimal polynomial of the embedded element
    x = sympy.symbols("x")
    mp = sympy.minimal_polynomial(as_sympy(Z(m)), x)
    assert sympy.Poly(mp, x).all_coeffs()[::-1] == list(cyclotomic_poly(m))


def test_logpoly_examples():
    L = LogPolynomial.L()
    assert (1 + L) + (2 - L) == 3
    assert (1 + L) * (1 + L) == LogPolynomial([1, 2, 1])
    assert (3 - 8 * L) / 9 == LogPolynomial([Fraction(1, 3), Fraction(-8, 9)])
    with pytest.raises(DivisorNotScalar):
        logpoly_arith(L, L, "div_by_scalar")
    assert LogPolynomial().degree == -1


@given(st.lists(rationals, max_size=4), st.lists(rationals, max_size=4))
def test_logpoly_degree_additive(a, b):
    pa, pb = LogPolynomial(a), LogPolynomial(b)
    if pa.is_zero() or pb.is_zero():
        assert (pa * pb).is_zero()
    else:
        assert (pa * pb).degree == pa.degree + pb.degree


@given(st.lists(rationals, max_size=4), st.complex_numbers(max_magnitude=3, allow_nan=False))
def test_logpoly_evaluate_is_horner(a, z):
    p = LogPolynomial(a)
    direct = sum(float(c) * z**i for i, c in enumerate(p.coeffs))
    assert abs(p.evaluate(z) - direct) < 1e-9 * (1 + abs(direct))


@given(cyclo())
def test_json_round_trip(c):
    v = LogPolynomial([c, Fraction(1, 3), c])
    assert LogPolynomial.from_json(v.to_json()) == v
    assert scalar_from_json(scalar_to_json(c)) == c


def test_lambda_pow_examples():
    two = LambdaDescriptor.rational(2)
    eight = lambda_pow(two, 3)
    assert eight.value == 8 and eight.log == LogPolynomial.L(3)
    assert lambda_pow(LambdaDescriptor.root_of_unity(4, 1), 4).is_one
    assert lambda_pow(LambdaDescriptor.root_of_unity(6, 1), 2) == LambdaDescriptor.root_of_unity(3, 1)


@given(st.integers(1, 12), st.integers(0, 11), st.integers(1, 6), st.integers(1, 6))
def test_lambda_pow_composes(m, k, d, e):
    if k % m == 0:
        return
    lam = LambdaDescriptor.root_of_unity(m, k)
    assert lambda_pow(lambda_pow(lam, d), e) == lambda_pow(lam, d * e)
    assert lambda_pow(lam, d).value == lam.value**d


def test_descriptor_parse_and_reject():
    assert LambdaDescriptor.parse("1").is_one
    assert LambdaDescriptor.parse("R:3/2").value == Fraction(3, 2)
    assert LambdaDescriptor.parse("Z:4,1").order == 4
    assert LambdaDescriptor.parse("R:-1/1").is_root
    for bad in ("R:0/1", "R:1/1", "Z:4,4", "Z:0,1"):
        with pytest.raises(InvalidLambda):
            LambdaDescriptor.parse(bad)
    for bad in ("", "Q:1", "R:x", "Z:4"):
        with pytest.raises(ValueError):
            LambdaDescriptor.parse(bad)


def test_complex_embedding_is_principal():
    assert abs(complex(Z(8)) - cmath.exp(2j * cmath.pi / 8)) < 1e-15
