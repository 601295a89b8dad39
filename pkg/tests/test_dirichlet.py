import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lbern.dirichlet import (
    ConductorMismatch,
    character,
    characters_mod,
    generalized_bernoulli,
    generalized_bernoulli_series,
)
from lbern.exact_scalar import CyclotomicElement, LambdaDescriptor, LogPolynomial, euler_phi
from lbern.lambda_bernoulli import lb_number, lb_poly

R = LambdaDescriptor.rational
Zr = LambdaDescriptor.root_of_unity
ONE = LambdaDescriptor.one()
SAMPLE = [R(2), R(Fraction(3, 2)), Zr(2, 1), Zr(3, 1), Zr(4, 1), ONE]
MODULI = [1, 3, 4, 5, 7, 8, 9, 12, 15]


def _real(elem):
    z = complex(elem)
    assert abs(z.imag) < 1e-12
    return z.real


@pytest.mark.parametrize("f", MODULI + [16, 24, 25])
def test_count_and_orthogonality(f):
    chars = characters_mod(f)
    assert len(chars) == euler_phi(f)
    assert len(set(chars)) == len(chars)
    for chi in chars:
        s = sum(complex(chi(a)) for a in range(f))
        assert abs(s - (euler_phi(f) if chi.is_trivial else 0)) < 1e-9


@pytest.mark.parametrize("f", [5, 8, 12, 21])
def test_multiplicativity(f):
    for chi in characters_mod(f):
        for a in range(f):
            for b in range(f):
                assert chi(a * b) == chi(a) * chi(b)


def test_conductors():
    assert characters_mod(6)[0].conductor == 1
    odd4 = [c for c in characters_mod(4) if not c.is_trivial][0]
    assert odd4.conductor == 4
    assert odd4.lift(8).conductor == 4
    assert odd4.lift(8).primitive() == odd4
    # conductors of mod 8: one trivial, one of conductor 4, two of conductor 8
    assert sorted(c.conductor for c in characters_mod(8)) == [1, 4, 8, 8]


def test_index_out_of_range():
    with pytest.raises(IndexError):
        character(5, 4)
    with pytest.raises(ValueError):
        characters_mod(0)


def _quadratic(f):
    """The real character mod f of order 2 (f prime or 4)."""
    return [c for c in characters_mod(f) if c.order == 2][0]


def test_classical_b1():
    for f, want in [(3, Fraction(-1, 3)), (4, Fraction(-1, 2)), (7, Fraction(-1))]:
        assert generalized_bernoulli(_quadratic(f), ONE, 1) == want
    assert generalized_bernoulli(_quadratic(5), ONE, 2) == Fraction(4, 5)


def test_b1_matches_class_number_formula():
    # B_{1,chi} = (1/f) sum a chi(a) at lambda = 1 for odd nontrivial chi
    seen = 0
    for f in (3, 4, 7, 8, 11):
        for chi in characters_mod(f):
            if chi.is_trivial or chi(-1) != CyclotomicElement.from_rational(chi.order, -1):
                continue
            direct = sum((chi(a) * a for a in range(1, f)), CyclotomicElement(chi.order)) * Fraction(1, f)
            got = generalized_bernoulli(chi, ONE, 1)
            assert got.scalar() == direct
            seen += 1
    assert seen >= 5


def test_trivial_mod_one():
    chi = characters_mod(1)[0]
    lam = R(2)
    assert generalized_bernoulli(chi, lam, 0) == lb_number(lam, 0) + LogPolynomial.L()
    assert generalized_bernoulli(chi, lam, 1) == lb_number(lam, 1) + 1
    for n in range(2, 8):
        assert generalized_bernoulli(chi, lam, n) == lb_number(lam, n)
        assert generalized_bernoulli(chi, lam, n) == lb_poly(lam, 1, n) * 2


@pytest.mark.parametrize("f", [3, 4, 5, 8])
def test_series_equality(f):
    for chi in characters_mod(f):
        for lam in (R(2), Zr(3, 1), ONE):
            for n in range(7):
                assert generalized_bernoulli(chi, lam, n) == generalized_bernoulli_series(chi, lam, n)


@pytest.mark.parametrize("f", [3, 4, 5, 8])
def test_f_independence(f):
    for chi in characters_mod(f):
        for lam in SAMPLE:
            for n in range(0, 13):
                base = generalized_bernoulli(chi, lam, n)
                assert generalized_bernoulli(chi, lam, n, F=2 * f) == base
                assert generalized_bernoulli(chi, lam, n, F=3 * f) == base


def test_conductor_mismatch():
    chi = characters_mod(4)[1]
    with pytest.raises(ConductorMismatch):
        generalized_bernoulli(chi, ONE, 2, F=6)


@given(st.sampled_from([3, 4, 5, 7]), st.integers(0, 6), st.sampled_from(SAMPLE))
def test_lambda_one_reduction_parity(f, n, lam):
    # at lambda = 1, B_{n,chi} vanishes when chi(-1) != (-1)^n (n >= 2)
    for chi in characters_mod(f):
        if chi.is_trivial or n < 2:
            continue
        sign = chi(-1)
        if complex(sign).real * (-1) ** n < 0:
            assert generalized_bernoulli(chi, ONE, n).is_zero()


def test_to_json_shape():
    js = characters_mod(5)[1].to_json()
    assert js["modulus"] == 5 and js["conductor"] == 5 and len(js["values"]) == 5
    assert math.isclose(_real(characters_mod(5)[2](2)), -1.0)
