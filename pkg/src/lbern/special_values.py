"""Special values of twisted Hurwitz zeta, partial zeta, L- and multiple zeta functions.

Exact values at negative integers are LogPolynomials.  Numeric series exist only
where they converge absolutely (|lambda| < 1); they are summed in increasing
index order with ``math.fsum`` on real and imaginary parts, so results are
reproducible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Callable

import mpmath

from .dirichlet import DirichletCharacter, generalized_bernoulli
from .exact_scalar import LambdaDescriptor, LogPolynomial
from .lambda_bernoulli import classical_bernoulli, lb_order_r, lb_poly

__all__ = [
    "NonConvergent",
    "PoleAtOne",
    "ModeError",
    "SpecialValueReport",
    "hurwitz_zeta_neg",
    "zeta_series_numeric",
    "partial_zeta_neg",
    "l_value_neg",
    "l_series_numeric",
    "l_series_via_hurwitz",
    "multiple_zeta_neg",
    "multiple_zeta_neg_oracle",
    "d1_rhs",
    "theorem12_explore",
    "principal_log",
    "evaluate",
]

MAX_TERMS = 10_000_000


class NonConvergent(ValueError):
    pass


class PoleAtOne(ValueError):
    pass


class ModeError(ValueError):
    pass


@dataclass
class SpecialValueReport:
    function: str
    arguments: dict[str, Any]
    exact: LogPolynomial | None = None
    numeric: complex | None = None
    residual: float | None = None
    tol: float | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"function": self.function, "arguments": self.arguments}
        if self.exact is not None:
            out["exact"] = self.exact.to_json()
        if self.numeric is not None:
            out["numeric"] = {"re": self.numeric.real, "im": self.numeric.imag}
        if self.residual is not None:
            out["residual"] = self.residual
        if self.tol is not None:
            out["tol"] = self.tol
        out.update(self.extra)
        return out


def principal_log(lam) -> complex:
    return cmath.log(complex(lam))


def evaluate(value: LogPolynomial, log_lambda: complex) -> complex:
    """Numeric value of an exact LogPolynomial with L -> ``log_lambda``."""
    return value.evaluate(log_lambda)


def hurwitz_zeta_neg(lam: LambdaDescriptor, k: int, x) -> LogPolynomial:
    """zeta_lambda(1 - k, x) = -B_k(lambda; x) / k."""
    if k < 1:
        raise ValueError("k must be positive")
    return lb_poly(lam, x, k) / -k


def _sum_series(term: Callable[[int], complex], envelope: Callable[[int], float], growth: float,
                lam_abs: float, tol: float, start_offset: float) -> complex:
    """Sum term(n) for n >= 0 until a geometric tail bound drops below tol.

    ``envelope(n)`` bounds |term(n)| and satisfies
    envelope(n+1) <= envelope(n) * |lambda| * ((n+1+a)/(n+a))^growth.
    """
    re: list[float] = []
    im: list[float] = []
    n = 0
    while True:
        t = term(n)
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise NonConvergent("non-finite term encountered")
        re.append(t.real)
        im.append(t.imag)
        base = n + start_offset
        ratio = lam_abs * ((base + 1) / base) ** growth
        if ratio < 1:
            tail = envelope(n) * ratio / (1 - ratio)
            if tail < tol:
                break
        n += 1
        if n > MAX_TERMS:
            raise NonConvergent("series did not reach tolerance")
    return complex(math.fsum(re), math.fsum(im))


def _envelope(lam_abs: float, s: complex, c: complex, offset: float) -> Callable[[int], float]:
    def env(n: int) -> float:
        b = n + offset
        return lam_abs**n * (b ** (-s.real) + abs(c) * b ** (1 - s.real))
    return env


def _check_numeric(lam, s):
    lam = complex(lam)
    if abs(lam) >= 1:
        raise NonConvergent("numeric series need |lambda| < 1")
    s = complex(s)
    if s == 1:
        raise PoleAtOne("s = 1 is a pole")
    return lam, s


def zeta_series_numeric(lam, s, x: float, tol: float = 1e-14,
                        log_lambda: complex | None = None) -> complex:
    """sum_n lambda^n (n+x)^(-s) + log(lambda)/(1-s) sum_n lambda^n (n+x)^(1-s).

    ``log_lambda`` defaults to the principal logarithm.
    """
    lam, s = _check_numeric(lam, s)
    x = float(x)
    if x <= 0:
        raise ValueError("x must be positive")
    L = principal_log(lam) if log_lambda is None else complex(log_lambda)
    c = L / (1 - s)

    def term(n: int) -> complex:
        b = n + x
        return lam**n * (b ** (-s) + c * b ** (1 - s))

    growth = max(0.0, 1 - s.real)
    return _sum_series(term, _envelope(abs(lam), s, c, x), growth, abs(lam), tol, x)


def partial_zeta_neg(lam: LambdaDescriptor, n: int, a: int, F: int) -> LogPolynomial:
    """H_lambda(1 - n, a | F) = -F^(n-1) lambda^a B_n(lambda^F; a/F) / n."""
    if lam.is_rational:
        raise ModeError("partial zeta values are defined for roots of unity and lambda = 1")
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 < a <= F:
        raise ValueError(f"residue a = {a} must satisfy 0 < a <= F = {F}")
    val = lb_poly(lam.pow(F), Fraction(a, F), n)
    return val * (lam.value**a * Fraction(F) ** (n - 1)) / -n


def l_value_neg(lam: LambdaDescriptor, k: int, chi: DirichletCharacter) -> LogPolynomial:
    """L_lambda(1 - k, chi) = -B_{k,chi}(lambda) / k."""
    if k < 1:
        raise ValueError("k must be positive")
    return generalized_bernoulli(chi, lam, k) / -k


def l_series_numeric(lam, s, chi: DirichletCharacter, tol: float = 1e-14,
                     log_lambda: complex | None = None) -> complex:
    """sum_{m>=1} lambda^m chi(m) m^(-s) - log(lambda)/(s-1) sum_{m>=1} lambda^m chi(m) m^(1-s)."""
    lam, s = _check_numeric(lam, s)
    L = principal_log(lam) if log_lambda is None else complex(log_lambda)
    c = L / (1 - s)
    f = chi.modulus
    vals = [complex(chi(a)) for a in range(f)]

    def term(n: int) -> complex:
        m = n + 1
        v = vals[m % f]
        if v == 0:
            return 0j
        return v * lam**m * (m ** (-s) + c * m ** (1 - s))

    growth = max(0.0, 1 - s.real)
    # n indexes m = n + 1
    env = _envelope(abs(lam), s, c, 1.0)
    return _sum_series(term, lambda n: abs(lam) * env(n), growth, abs(lam), tol, 1.0)


def l_series_via_hurwitz(lam, s, chi: DirichletCharacter, tol: float = 1e-14,
                         log_lambda: complex | None = None) -> complex:
    """d^(-s) sum_{a=1}^{d} lambda^a chi(a) zeta_{lambda^d}(s, a/d), d the modulus.

    The inner functions use log(lambda^d) = d log(lambda), not the principal log of lambda^d.
    """
    lam, s = _check_numeric(lam, s)
    L = principal_log(lam) if log_lambda is None else complex(log_lambda)
    d = chi.modulus
    lam_d = lam**d
    parts_re, parts_im = [], []
    for a in range(1, d + 1):
        v = complex(chi(a))
        if v == 0:
            continue
        z = zeta_series_numeric(lam_d, s, a / d, tol / d, log_lambda=d * L)
        term = lam**a * v * z
        parts_re.append(term.real)
        parts_im.append(term.imag)
    return cmath.exp(-s * math.log(d)) * complex(math.fsum(parts_re), math.fsum(parts_im))


def multiple_zeta_neg(r: int, m: int) -> Fraction:
    """zeta_r(-m) = (-1)^r m! B^(r)_{m+r}(1; r) / (m+r)!, unrestricted-index multiple zeta."""
    if r < 1 or m < 0:
        raise ValueError("need r >= 1 and m >= 0")
    b = lb_order_r(LambdaDescriptor.one(), r, r, m + r).scalar()
    return (-1) ** r * factorial(m) * b / factorial(m + r)


def _binom_poly(r: int) -> list[Fraction]:
    # coefficients a_j of C(N-1, r-1) as a polynomial in N
    poly = [Fraction(1)]
    for i in range(1, r):
        # multiply by (N - i)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j + 1] += c
            nxt[j] -= i * c
        poly = nxt
    return [c / factorial(r - 1) for c in poly]


def _riemann_zeta_neg(k: int) -> Fraction:
    # zeta(-k) = -B_{k+1}(1)/(k+1); B_{k+1}(1) differs from B_{k+1} only when k = 0
    b = classical_bernoulli(k + 1) + (1 if k == 0 else 0)
    return -b / (k + 1)


def multiple_zeta_neg_oracle(r: int, m: int) -> Fraction:
    """sum_j a_j zeta(-m-j) where C(N-1, r-1) = sum_j a_j N^j; no lambda-Bernoulli code involved."""
    return sum((c * _riemann_zeta_neg(m + j) for j, c in enumerate(_binom_poly(r))), Fraction(0))


def d1_rhs(lam: LambdaDescriptor, r: int, m: int, j_max: int) -> LogPolynomial:
    """(-lambda)^r m! sum_{j<=j_max} C(-m-r-1, j) L^j B^(r)_{m+r+j}(lambda; r) / (m+r+j)!.

    Only the lambda -> 1 case is known to equal zeta_r(-m).
    """
    if lam.log_coeff == 0:
        j_max = 0
    acc = LogPolynomial()
    for j in range(j_max + 1):
        gb = (-1) ** j * comb(m + r + j, j)  # C(-m-r-1, j)
        b = lb_order_r(lam, r, r, m + r + j)
        acc = acc + b * (lam.log**j) * Fraction(gb, factorial(m + r + j))
    return acc * ((-lam.value) ** r * factorial(m))


def _numeric_row(lam: mpmath.mpc, L: mpmath.mpc, n_max: int) -> list:
    row = [L / (lam - 1)]
    for n in range(1, n_max + 1):
        s = mpmath.fsum(comb(n, k) * row[k] for k in range(n))
        row.append(((1 if n == 1 else 0) - lam * s) / (lam - 1))
    return row


def _numeric_order_r(lam, r: int, x, n_max: int, dps: int) -> list:
    with mpmath.workdps(dps):
        if lam == 1:
            base = [mpmath.mpf(classical_bernoulli(n).numerator) / classical_bernoulli(n).denominator
                    for n in range(n_max + 1)]
        else:
            lam_m = mpmath.mpc(lam)
            base = _numeric_row(lam_m, mpmath.log(lam_m), n_max)
        row = base
        for _ in range(r - 1):
            row = [mpmath.fsum(comb(n, k) * row[k] * base[n - k] for k in range(n + 1))
                   for n in range(n_max + 1)]
        xm = mpmath.mpf(x) if not isinstance(x, complex) else mpmath.mpc(x)
        row = [mpmath.fsum(comb(n, k) * row[k] * xm ** (n - k) for k in range(n + 1))
               for n in range(n_max + 1)]
        return row


def theorem12_explore(lam, r: int, n: int, x, l_max: int, tol: float = 1e-12) -> dict:
    """Compare B^(r)_n(lambda; x) with two truncated candidates

        lambda^(-r) sum_{l<=l_max} B^(r)_{n+l}(lambda; x) (log lambda)^l / l!
        lambda^(-x) (same sum)

    and report both residuals.  No correctness claim is made for either variant.
    """
    lam_c = complex(lam)
    L = cmath.log(lam_c)
    if lam_c != 1 and abs(L) >= 1:
        raise NonConvergent("log(lambda) too large for the truncated sum")
    gap = abs(lam_c - 1)
    dps = 30 + int((n + l_max + 2) * r * max(0.0, -math.log10(gap))) if gap else 30
    row = _numeric_order_r(lam_c, r, x, n + l_max, dps)
    with mpmath.workdps(dps):
        Lm = mpmath.log(mpmath.mpc(lam_c)) if lam_c != 1 else mpmath.mpf(0)
        terms = [row[n + l] * Lm**l / mpmath.factorial(l) for l in range(l_max + 1)]
        s = mpmath.fsum(terms)
        lam_m = mpmath.mpc(lam_c)
        target = row[n]
        var_r = s * lam_m ** (-r)
        var_x = s * lam_m ** (-mpmath.mpf(x))
        res_r = abs(complex(target - var_r))
        res_x = abs(complex(target - var_x))
        last = abs(complex(terms[-1])) if l_max else 0.0
    if last > tol and lam_c != 1:
        converged = False
    else:
        converged = True
    return {
        "lambda": [lam_c.real, lam_c.imag],
        "r": r,
        "n": n,
        "x": float(x),
        "l_max": l_max,
        "value": [complex(target).real, complex(target).imag],
        "residual_lambda_minus_r": res_r,
        "residual_lambda_minus_x": res_x,
        "last_term": last,
        "converged": converged,
    }
