"""Identity-verification suites behind ``lbern verify``.

Each check is a small function returning (passed, detail).  Suites are plain
lists so the report order is the declaration order.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import padic, special_values as sv
from .dirichlet import characters_mod, generalized_bernoulli
from .exact_scalar import LambdaDescriptor, LogPolynomial
from .frobenius_euler import fe_order_r
from .lambda_bernoulli import (
    barnes_multiweight,
    gauss_mult_rhs,
    lb_distribution_rhs,
    lb_number,
    lb_number_via_fe,
    lb_numbers,
    lb_order_r_row,
    lb_poly,
    mult_rearranged_rhs,
    q_integer,
    sum_of_powers,
    sum_of_powers_direct,
)
from .series_oracle import (
    Barnes,
    Generalized,
    OrderOne,
    OrderR,
    TruncatedSeries,
    expand_gf,
    lambda_factor,
)

SUITES = ("core", "distribution", "characters", "special-values", "padic")


def sample_lambdas() -> list[LambdaDescriptor]:
    R, Z = LambdaDescriptor.rational, LambdaDescriptor.root_of_unity
    return [R(2), R(Fraction(3, 2)), R(-5), Z(2, 1), Z(3, 1), Z(4, 1), LambdaDescriptor.one()]


@dataclass
class CheckResult:
    suite: str
    name: str
    anchor: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        mark = "✓" if self.passed else "✗"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"[{self.suite}] {self.anchor} {mark}  {self.name}{tail}"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "anchor": self.anchor,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class Config:
    max_n: int = 12
    seed: int = 0


Check = Callable[[Config], tuple[bool, str]]


def _first_failure(items) -> tuple[bool, str]:
    count = 0
    for label, ok in items:
        count += 1
        if not ok:
            return False, f"failed at {label}"
    return True, f"{count} cases"


# core


def _lowest_values(cfg: Config):
    def items():
        for q in (Fraction(2), Fraction(3, 2), Fraction(-5)):
            lam = LambdaDescriptor.rational(q)
            L = LogPolynomial.L()
            b0 = L / (q - 1)
            b1 = (LogPolynomial([q - 1]) - L * q) / (q - 1) ** 2
            yield f"lambda={q}", lb_number(lam, 0) == b0 and lb_number(lam, 1) == b1
    return _first_failure(items())


def _triple_route(cfg: Config):
    def items():
        for lam in sample_lambdas():
            row = lb_numbers(lam, cfg.max_n)
            series = expand_gf(OrderOne(lam), cfg.max_n)
            for n in range(cfg.max_n + 1):
                ok = row[n] == series[n]
                if not lam.is_one:
                    ok = ok and row[n] == lb_number_via_fe(lam, n)
                yield f"lambda={lam.spec()} n={n}", ok
    return _first_failure(items())


def _poly_series(cfg: Config):
    rng = random.Random(cfg.seed)
    def items():
        for lam in sample_lambdas():
            x = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
            series = expand_gf(OrderOne(lam, x), cfg.max_n)
            for n in range(cfg.max_n + 1):
                yield f"lambda={lam.spec()} x={x} n={n}", lb_poly(lam, x, n) == series[n]
    return _first_failure(items())


def _order_r(cfg: Config):
    n_max = min(cfg.max_n, 10)
    def items():
        for lam in sample_lambdas():
            for r in (1, 2, 3):
                row = lb_order_r_row(lam, r, Fraction(1, 2), n_max)
                series = expand_gf(OrderR(lam, r, Fraction(1, 2)), n_max)
                yield f"lambda={lam.spec()} r={r}", row == list(series.coeffs)
    return _first_failure(items())


def _kronecker(cfg: Config):
    # (lambda e^t - 1)^r times the order-r series is (log lambda + t)^r
    n_max = min(cfg.max_n, 10)
    def items():
        for lam in sample_lambdas():
            if lam.is_rational:
                continue
            v = lam.value
            den = TruncatedSeries([v - 1] + [v] * n_max)
            for r in (1, 2, 3):
                row = TruncatedSeries(lb_order_r_row(lam, r, 0, n_max))
                yield f"lambda={lam.spec()} r={r}", den**r * row == TruncatedSeries.t_power(r, n_max)
    return _first_failure(items())


def _fe_link(cfg: Config):
    # B^(r)_{n+r}(lambda) = (n+r)!/n! (lambda - 1)^-r H^(r)_n(1/lambda), roots of unity
    n_max = min(cfg.max_n, 8)
    def items():
        for lam in sample_lambdas():
            if not lam.is_root:
                continue
            v = lam.value
            for r in (1, 2, 3):
                row = lb_order_r_row(lam, r, 0, n_max + r)
                for n in range(n_max + 1):
                    fall = 1
                    for i in range(n + 1, n + r + 1):
                        fall *= i
                    rhs = fe_order_r(1 / v, r, 0, n) * fall / (v - 1) ** r
                    yield f"lambda={lam.spec()} r={r} n={n}", row[n + r] == rhs
    return _first_failure(items())


def _barnes(cfg: Config):
    n_max = min(cfg.max_n, 8)
    def items():
        for lam in sample_lambdas():
            for w in ((1,), (1, 2), (2, 3), (1, 1, 2)):
                series = expand_gf(Barnes(lam, w), n_max)
                ok = all(barnes_multiweight(lam, w, n) == series[n] for n in range(n_max + 1))
                yield f"lambda={lam.spec()} w={w}", ok
    return _first_failure(items())


def _lambda_factor_division(cfg: Config):
    def items():
        for lam in sample_lambdas():
            f = lambda_factor(lam, 1, cfg.max_n)
            yield f"lambda={lam.spec()}", list(f.coeffs) == lb_numbers(lam, cfg.max_n)
    return _first_failure(items())


# distribution


def _distribution(cfg: Config):
    rng = random.Random(cfg.seed + 1)
    def items():
        for lam in sample_lambdas():
            for d in (2, 3, 4):
                x = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
                for n in range(cfg.max_n + 1):
                    ok = lb_distribution_rhs(lam, x, n, d) == lb_poly(lam, x, n)
                    yield f"lambda={lam.spec()} d={d} x={x} n={n}", ok
    return _first_failure(items())


def _worked_distribution(cfg: Config):
    lam = LambdaDescriptor.rational(2)
    target = LogPolynomial([1, -2])
    ok = lb_distribution_rhs(lam, 0, 1, 2) == target and lb_number(lam, 1) == target
    return ok, "lambda=2, d=2, n=1 gives 1 - 2L"


def _gauss(cfg: Config):
    def items():
        for lam in sample_lambdas():
            for m in (2, 3):
                for n in range(cfg.max_n + 1):
                    yield f"lambda={lam.spec()} m={m} n={n}", gauss_mult_rhs(lam, n, m) == lb_number(lam, n) * m
    return _first_failure(items())


def _mult_rearranged(cfg: Config):
    def items():
        for lam in sample_lambdas():
            for m in (2, 3):
                qm = q_integer(lam, m)
                for n in range(cfg.max_n + 1):
                    lhs = lb_number(lam, n) * m - lb_number(lam.pow(m), n) * (qm * m**n)
                    yield f"lambda={lam.spec()} m={m} n={n}", lhs == mult_rearranged_rhs(lam, n, m)
    return _first_failure(items())


def _sums_of_powers(cfg: Config):
    l_max = min(cfg.max_n, 8)
    def items():
        for lam in sample_lambdas():
            for l in range(l_max + 1):
                for k in range(1, 26):
                    yield f"lambda={lam.spec()} l={l} k={k}", sum_of_powers(lam, l, k) == sum_of_powers_direct(lam, l, k)
    ok, detail = _first_failure(items())
    one = LambdaDescriptor.one()
    classic = lb_poly(one, 3, 4) - lb_number(one, 4) == 36
    return ok and classic, detail + ("" if classic else "; B_4(3) - B_4 != 36")


# characters


def _gen_bern(cfg: Config):
    n_max = min(cfg.max_n, 12)
    lams = [LambdaDescriptor.one(), LambdaDescriptor.rational(2), LambdaDescriptor.root_of_unity(2, 1)]
    def items():
        for f in (3, 4, 5, 8):
            for chi in characters_mod(f):
                for lam in lams:
                    series = expand_gf(Generalized(chi, lam), n_max)
                    for n in range(n_max + 1):
                        yield f"f={f} #{chi.index} lambda={lam.spec()} n={n}", generalized_bernoulli(chi, lam, n) == series[n]
    return _first_failure(items())


def _f_independence(cfg: Config):
    n_max = min(cfg.max_n, 8)
    lams = [LambdaDescriptor.one(), LambdaDescriptor.rational(2), LambdaDescriptor.root_of_unity(2, 1)]
    def items():
        for f in (3, 4, 5):
            for chi in characters_mod(f):
                for lam in lams:
                    for n in range(n_max + 1):
                        base = generalized_bernoulli(chi, lam, n)
                        ok = all(generalized_bernoulli(chi, lam, n, F=c * f) == base for c in (2, 3))
                        yield f"f={f} #{chi.index} lambda={lam.spec()} n={n}", ok
    return _first_failure(items())


def _chi4(cfg: Config):
    chi = characters_mod(4)[1]
    v = generalized_bernoulli(chi, LambdaDescriptor.one(), 1)
    return v == Fraction(-1, 2), f"B_1,chi4 = {v.scalar()}"


# special values


def _hurwitz_bridge(cfg: Config):
    k_max = min(cfg.max_n, 4)
    def items():
        for q in (Fraction(1, 2), Fraction(3, 10), Fraction(-2, 5)):
            lam = LambdaDescriptor.rational(q)
            Lval = sv.principal_log(float(q))
            for k in range(1, k_max + 1):
                for x in (Fraction(1), Fraction(1, 2)):
                    exact = sv.hurwitz_zeta_neg(lam, k, x).evaluate(Lval)
                    num = sv.zeta_series_numeric(float(q), 1 - k, float(x))
                    yield f"lambda={q} k={k} x={x}", abs(num - exact) <= 1e-10
    return _first_failure(items())


def _l_two_sided(cfg: Config):
    def items():
        for chi in characters_mod(3) + characters_mod(4):
            for lam in (0.5, -0.4, 0.3 + 0.2j):
                for s in (2.0, 2.5, 3 + 1j):
                    a = sv.l_series_numeric(lam, s, chi)
                    b = sv.l_series_via_hurwitz(lam, s, chi)
                    yield f"f={chi.modulus} #{chi.index} lambda={lam} s={s}", abs(a - b) <= 1e-9
    return _first_failure(items())


def _l_neg_bridge(cfg: Config):
    k_max = min(cfg.max_n, 4)
    def items():
        for chi in characters_mod(1) + characters_mod(3) + characters_mod(4):
            lam = LambdaDescriptor.rational(Fraction(1, 2))
            for k in range(1, k_max + 1):
                exact = sv.l_value_neg(lam, k, chi).evaluate(sv.principal_log(0.5))
                num = sv.l_series_numeric(0.5, 1 - k, chi)
                yield f"f={chi.modulus} #{chi.index} k={k}", abs(num - exact) <= 1e-10
    return _first_failure(items())


def _partial_sum(cfg: Config):
    k_max = min(cfg.max_n, 6)
    lams = [LambdaDescriptor.one(), LambdaDescriptor.root_of_unity(2, 1), LambdaDescriptor.root_of_unity(3, 1)]
    def items():
        for f in (1, 3, 4, 5):
            for chi in characters_mod(f):
                for lam in lams:
                    for k in range(1, k_max + 1):
                        acc = LogPolynomial()
                        for a in range(1, f + 1):
                            c = chi(a)
                            if not c.is_zero():
                                acc = acc + sv.partial_zeta_neg(lam, k, a, f) * c
                        yield f"f={f} #{chi.index} lambda={lam.spec()} k={k}", acc == sv.l_value_neg(lam, k, chi)
    return _first_failure(items())


def _multiple_zeta(cfg: Config):
    def items():
        for r in range(1, 5):
            for m in range(0, 7):
                yield f"r={r} m={m}", sv.multiple_zeta_neg(r, m) == sv.multiple_zeta_neg_oracle(r, m)
    ok, detail = _first_failure(items())
    anchors = sv.multiple_zeta_neg(1, 1) == Fraction(-1, 12) and sv.multiple_zeta_neg(2, 1) == Fraction(1, 12)
    return ok and anchors, detail


def _d1_degeneration(cfg: Config):
    one = LambdaDescriptor.one()
    ok = all(
        sv.d1_rhs(one, r, m, 3) == sv.multiple_zeta_neg(r, m) for r in range(1, 4) for m in range(5)
    )
    counter = sv.d1_rhs(LambdaDescriptor.root_of_unity(2, 1), 1, 1, 0)
    ok = ok and counter == Fraction(-1, 4)
    return ok, f"lambda = -1, r = 1, m = 1 gives {counter.scalar()} (zeta_1(-1) = -1/12)"


# p-adic


def _teichmuller(cfg: Config):
    def items():
        yield "omega(2) mod 25", padic.teichmuller(2, 5, 2).value.residue == 7
        for p in (5, 7, 13):
            for N in (1, 4, 10):
                for a in range(1, p):
                    w = padic.teichmuller(a, p, N).value
                    ok = (w ** (p - 1)).residue == 1 % p**N and w.residue % p == a
                    yield f"p={p} N={N} a={a}", ok
    return _first_failure(items())


def _padic_log(cfg: Config):
    rng = random.Random(cfg.seed + 2)
    def items():
        yield "log_5 6 mod 25", padic.padic_log(6, 5, 2).residue == 5
        for p in (5, 7):
            for _ in range(10):
                x = 1 + p * rng.randint(0, 10**6)
                y = 1 + p * rng.randint(0, 10**6)
                lhs = padic.padic_log(x * y, p, 10)
                rhs = padic.padic_log(x, p, 10) + padic.padic_log(y, p, 10)
                yield f"p={p} x={x} y={y}", lhs.agrees(rhs, 9)
    return _first_failure(items())


def _witt(cfg: Config):
    n_max = min(cfg.max_n, 4)
    steps = 6 if cfg.max_n >= 6 else 5
    def items():
        for lam in (1, 6):
            for n in range(n_max + 1):
                vals = padic.volkenborn_diagnostics(lam, n, 0, 5, steps)["valuations"]
                mono = all(b >= a for a, b in zip(vals, vals[1:]))
                growth = all(v >= M - 1 for M, v in enumerate(vals, start=1))
                yield f"lambda={lam} n={n} valuations={vals}", mono and growth
    return _first_failure(items())


def _h_dual(cfg: Config):
    n_max = min(cfg.max_n, 5)
    lams = [LambdaDescriptor.one(), LambdaDescriptor.root_of_unity(2, 1), LambdaDescriptor.root_of_unity(4, 1)]
    def items():
        for F in (5, 20):
            for lam in lams:
                for a in range(1, F + 1):
                    if a % 5 == 0:
                        continue
                    for n in range(1, n_max + 1):
                        j = padic.h_p_lambda_neg(n, a, F, lam, 5, 6)
                        c = padic.h_p_lambda_neg_closed(n, a, F, lam, 5, 6)
                        yield f"F={F} lambda={lam.spec()} a={a} n={n}", j.agrees(c, 6)
    return _first_failure(items())


def _l_dual(cfg: Config):
    n_max = min(cfg.max_n, 4)
    def items():
        for p, N in ((5, 8), (7, 6)):
            lams = [LambdaDescriptor.one(), LambdaDescriptor.root_of_unity(2, 1)]
            for f in (1, 3, 4, p):
                for chi in characters_mod(f):
                    if (p - 1) % chi.order:
                        continue
                    for lam in lams:
                        for n in range(1, n_max + 1):
                            a = padic.l_p_lambda_neg(n, chi, lam, p, N)
                            b = padic.l_p_lambda_neg_euler(n, chi, lam, p, N)
                            yield (f"p={p} f={f} #{chi.index} lambda={lam.spec()} n={n}",
                                   a.agrees(b, N - padic.L_P_SHORTFALL))
    return _first_failure(items())


REGISTRY: dict[str, list[tuple[str, str, Check]]] = {
    "core": [
        ("lowest values B_0, B_1 in closed form", "Definition (B_0, B_1 display)", _lowest_values),
        ("recurrence = Frobenius-Euler formula = series", "Theorem 1", _triple_route),
        ("polynomials = series with e^{xt}", "Definition (polynomials)", _poly_series),
        ("order-r convolution = series", "Order-r definition", _order_r),
        ("(lambda e^t - 1)^r B^(r)(t) = t^r", "Order-r Kronecker identity", _kronecker),
        ("order-r Frobenius-Euler link", "Order-r T_p link", _fe_link),
        ("Barnes multi-weight = series", "Barnes definition", _barnes),
        ("long division reproduces recurrence", "Generating function", _lambda_factor_division),
    ],
    "distribution": [
        ("distribution relation", "Theorem 3", _distribution),
        ("worked distribution instance", "Theorem 3 example", _worked_distribution),
        ("Gauss multiplication", "Corollary 1", _gauss),
        ("rearranged multiplication", "Theorem 4", _mult_rearranged),
        ("sums of powers", "Theorem 5", _sums_of_powers),
    ],
    "characters": [
        ("conductor sum = character series", "Generalized definition", _gen_bern),
        ("independence of F", "Generalized F-independence", _f_independence),
        ("B_1,chi4 = -1/2", "Classical check", _chi4),
    ],
    "special-values": [
        ("Hurwitz values at 1-k, numeric bridge", "Theorem 7", _hurwitz_bridge),
        ("L-series two-sided identity", "Theorem 9", _l_two_sided),
        ("L values at 1-k, numeric bridge", "Theorem 10", _l_neg_bridge),
        ("partial zeta sum = L value", "Partial zeta", _partial_sum),
        ("multiple zeta formula = unrestricted oracle", "Theorem 11 (D2)", _multiple_zeta),
        ("(D1) right side: lambda -> 1 only", "Theorem 11 (D1)", _d1_degeneration),
    ],
    "padic": [
        ("Teichmuller lifts", "Teichmuller character", _teichmuller),
        ("p-adic log homomorphism", "p-adic log", _padic_log),
        ("Volkenborn sums converge to B_n", "Theorem 2", _witt),
        ("H_p j-sum = closed form", "p-adic partial zeta", _h_dual),
        ("L_p a-sum = Euler factor route", "p-adic L", _l_dual),
    ],
}


def run(suite: str = "all", cfg: Config | None = None) -> list[CheckResult]:
    cfg = cfg or Config()
    if suite != "all" and suite not in REGISTRY:
        raise KeyError(suite)
    names = SUITES if suite == "all" else (suite,)
    out = []
    for s in names:
        for name, anchor, fn in REGISTRY[s]:
            t0 = time.perf_counter()
            try:
                ok, detail = fn(cfg)
            except Exception as exc:  # a crash is a failure, reported with its message
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            out.append(CheckResult(s, name, anchor, ok, detail, time.perf_counter() - t0))
    return out
