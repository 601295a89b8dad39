from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lbern.dirichlet import characters_mod
from lbern.exact_scalar import LambdaDescriptor
from lbern.lambda_bernoulli import classical_bernoulli
from lbern.padic import (
    L_P_SHORTFALL,
    CharacterNotRepresentable,
    NotAUnit,
    OutsideDomain,
    PadicInt,
    embed_cyclotomic,
    h_p_lambda_neg,
    h_p_lambda_neg_closed,
    kummer_diagnostic,
    l_p_lambda_neg,
    l_p_lambda_neg_euler,
    one_unit,
    padic_log,
    teichmuller,
    teichmuller_character,
    valuation,
    volkenborn_diagnostics,
    volkenborn_sum,
)
from lbern.special_values import partial_zeta_neg

ONE = LambdaDescriptor.one()
Zr = LambdaDescriptor.root_of_unity
R = LambdaDescriptor.rational


def test_padicint_basics():
    x = PadicInt.from_rational(Fraction(1, 2), 5, 3)
    assert x.residue == 63 and (x * 2).residue == 1
    y = PadicInt.from_rational(Fraction(1, 5), 5, 3)
    assert y.valuation() == -1 and y.shift == 1
    assert (y * 5).agrees(PadicInt(5, 3, 1), 2)
    z = PadicInt.from_rational(10, 5, 4)
    assert z.valuation() == 1 and not z.is_unit()
    inv = z.inverse()
    assert inv.prec == 2
    assert (z * inv).agrees(PadicInt(5, 4, 1), 1)
    assert PadicInt.from_rational(0, 7, 5).is_zero()


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_padicint_ring_homomorphism(a, b):
    p, N = 7, 6
    if a.denominator % p or b.denominator % p:
        return
    A, B = PadicInt.from_rational(a, p, N), PadicInt.from_rational(b, p, N)
    assert (A + B).agrees(PadicInt.from_rational(a + b, p, N))
    assert (A * B).agrees(PadicInt.from_rational(a * b, p, N))
    assert (A - B).agrees(PadicInt.from_rational(a - b, p, N))


def test_teichmuller_examples():
    assert teichmuller(1, 5, 6).value.residue == 1
    assert teichmuller(2, 5, 2).value.residue == 7
    assert teichmuller(4, 5, 6).value.residue == 5**6 - 1
    with pytest.raises(NotAUnit):
        teichmuller(10, 5, 3)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_teichmuller_properties(p):
    for N in range(1, 11):
        for a in range(1, p):
            w = teichmuller(a, p, N).value
            assert w.residue % p == a
            assert pow(w.residue, p - 1, p**N) == 1 % p**N
    # multiplicativity
    N = 8
    for a in range(1, p):
        for b in range(1, p):
            wa, wb = teichmuller(a, p, N).value, teichmuller(b, p, N).value
            assert (wa * wb).agrees(teichmuller(a * b, p, N).value)


def test_one_unit():
    for a in (2, 3, Fraction(3, 7)):
        u = one_unit(a, 5, 6)
        assert (u.residue - 1) % 5 == 0


def test_log_examples():
    assert padic_log(1, 5, 6).is_zero()
    assert padic_log(6, 5, 2).residue == 5
    with pytest.raises(OutsideDomain):
        padic_log(2, 5, 4)


@pytest.mark.parametrize("p", [5, 7])
def test_log_homomorphism(p):
    N = 10
    samples = [1 + p, 1 + 2 * p, Fraction(1, 1 + p), 1 + p**2 * 3, 1 - p]
    for x in samples:
        for y in samples:
            lhs = padic_log(Fraction(x) * Fraction(y), p, N)
            rhs = padic_log(x, p, N) + padic_log(y, p, N)
            assert lhs.agrees(rhs, N - 1)
        assert padic_log(Fraction(x) ** 2, p, N).agrees(padic_log(x, p, N) * 2, N - 1)


def test_log_against_series_truncation():
    # direct rational partial sum of the Mercator series, many terms
    p, N = 5, 8
    z = Fraction(5)
    s = sum(((-1) ** (k + 1)) * z**k / k for k in range(1, 60))
    assert padic_log(6, p, N).agrees(PadicInt.from_rational(s, p, N + 4), N)


def test_volkenborn_examples():
    assert volkenborn_sum(1, 1, 0, 5, 3) == [2, 12, 62]
    assert volkenborn_sum(ONE, 0, 0, 5, 4) == [1, 1, 1, 1]
    s3 = volkenborn_sum(1, 1, 0, 5, 3)[-1]
    assert PadicInt.from_rational(s3, 5, 3).agrees(PadicInt.from_rational(Fraction(-1, 2), 5, 3))


def test_volkenborn_rational_against_naive():
    for q in (Fraction(6), Fraction(11, 6)):
        got = volkenborn_sum(q, 2, Fraction(1, 2), 5, 2)
        for M, s in enumerate(got, start=1):
            Y = 5**M
            want = sum(q**y * (Fraction(1, 2) + y) ** 2 for y in range(Y)) / Y
            assert s == want


def test_volkenborn_domain():
    with pytest.raises(OutsideDomain):
        volkenborn_sum(Zr(4, 1), 1, 0, 5, 3)
    with pytest.raises(OutsideDomain):
        volkenborn_sum(2, 1, 0, 5, 3)
    with pytest.raises(OutsideDomain):
        volkenborn_sum(ONE, 1, Fraction(1, 5), 5, 3)


@pytest.mark.parametrize("lam", [1, 6])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_witt_convergence_x0(lam, n):
    vals = volkenborn_diagnostics(lam, n, 0, 5, 6)["valuations"]
    assert all(b >= a for a, b in zip(vals, vals[1:])), vals
    assert all(v >= M - 1 for M, v in enumerate(vals, start=1)), vals


@pytest.mark.parametrize("lam", [1, 6, Fraction(11, 6)])
def test_witt_lower_bound_general_x(lam):
    for x in (Fraction(1), Fraction(1, 2), Fraction(3)):
        for n in range(4):
            vals = volkenborn_diagnostics(lam, n, x, 5, 5)["valuations"]
            assert all(v >= M - 2 for M, v in enumerate(vals, start=1)), (x, n, vals)


def test_h_p_example():
    val = h_p_lambda_neg(1, 1, 5, ONE, 5, 6)
    want = PadicInt.from_rational(-(Fraction(1, 5) - Fraction(1, 2)), 5, 6)
    assert val.agrees(want, 6)
    assert val.valuation() == -1


def test_h_p_dual_routes_spec_instance():
    a = h_p_lambda_neg(2, 3, 20, ONE, 5, 6)
    b = h_p_lambda_neg_closed(2, 3, 20, ONE, 5, 6)
    assert a.agrees(b, 6)


@pytest.mark.parametrize("p,F", [(5, 5), (5, 20), (7, 21)])
def test_h_p_dual_routes(p, F):
    N = 6
    lams = [ONE] + [Zr(m, 1) for m in range(2, p) if (p - 1) % m == 0]
    for lam in lams:
        for n in (1, 2, 3, 5):
            for a in range(1, F + 1):
                if a % p == 0:
                    continue
                x = h_p_lambda_neg(n, a, F, lam, p, N)
                y = h_p_lambda_neg_closed(n, a, F, lam, p, N)
                assert x.agrees(y, N), (lam, n, a)


def test_h_p_a_one_mod_p():
    # omega(a) = 1, so the interpolated value is the complex one embedded
    x = h_p_lambda_neg(3, 6, 10, ONE, 5, 6)
    want = embed_cyclotomic(partial_zeta_neg(ONE, 3, 6, 10).scalar(), 5, 8)
    assert x.agrees(want, 6)


def test_h_p_errors():
    with pytest.raises(NotAUnit):
        h_p_lambda_neg(1, 5, 10, ONE, 5, 4)
    with pytest.raises(ValueError):
        h_p_lambda_neg(1, 1, 4, ONE, 5, 4)
    with pytest.raises(OutsideDomain):
        h_p_lambda_neg(1, 1, 5, R(6), 5, 4)
    with pytest.raises(CharacterNotRepresentable):
        h_p_lambda_neg(1, 1, 5, Zr(3, 1), 5, 4)


def _representable(f, p):
    return [c for c in characters_mod(f) if (p - 1) % c.order == 0]


@pytest.mark.parametrize("p,N", [(5, 8), (7, 6)])
def test_l_p_dual_routes(p, N):
    lams = [ONE, Zr(2, 1)]
    for f in (1, 3, 4, p):
        for chi in _representable(f, p):
            for lam in lams:
                for n in (1, 2, 3):
                    x = l_p_lambda_neg(n, chi, lam, p, N)
                    y = l_p_lambda_neg_euler(n, chi, lam, p, N)
                    assert x.agrees(y, N - L_P_SHORTFALL), (f, chi, lam, n)


def test_l_p_trivial_classical():
    # chi trivial, lambda = 1, n = 1, p = 5: the Euler route is -(B_{1,psi} - psi(5) B_{1,psi}), psi = omega^-1
    x = l_p_lambda_neg(1, characters_mod(1)[0], ONE, 5, 8)
    y = l_p_lambda_neg_euler(1, characters_mod(1)[0], ONE, 5, 8)
    assert x.agrees(y, 8 - L_P_SHORTFALL)


def test_l_p_even_n_trivial_character_kummer():
    # n = p - 1 lands on the trivial twist: L_p(1-n) = -(1 - p^(n-1)) B_n / n
    p, n, N = 5, 4, 6
    x = l_p_lambda_neg(n, characters_mod(1)[0], ONE, p, N)
    b = classical_bernoulli(n)
    want = PadicInt.from_rational(-(1 - Fraction(p) ** (n - 1)) * b / n, p, N + 4)
    assert x.agrees(want, N - L_P_SHORTFALL)


def test_character_not_representable():
    chi = [c for c in characters_mod(7) if c.order == 6][0]
    with pytest.raises(CharacterNotRepresentable):
        l_p_lambda_neg(1, chi, ONE, 5, 4)


def test_teichmuller_character_matches_lifts():
    p, N = 7, 6
    w = teichmuller_character(p)
    for a in range(1, p):
        assert embed_cyclotomic(w(a), p, N).agrees(teichmuller(a, p, N).value)


def test_kummer_diagnostic_runs():
    rep = kummer_diagnostic(1, 5, characters_mod(1)[0], ONE, 5, 6)
    assert rep["congruence_level"] == 0
    assert isinstance(rep["l_valuation"], int)
    rep = kummer_diagnostic(2, 22, characters_mod(1)[0], ONE, 5, 6, a=2, F=5)
    assert rep["congruence_level"] == 1 and "h_valuation" in rep


def test_valuation_helper():
    assert valuation(Fraction(50, 3), 5) == 2
    assert valuation(Fraction(3, 25), 5) == -2
    assert valuation(0, 5) is None
