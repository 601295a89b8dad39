"""Truncated exponential power series with LogPolynomial coefficients.

Index ``n`` stores the coefficient of ``t^n / n!``, so products are binomial
convolutions with integer weights.  This is the brute-force expansion oracle
for every generating function in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Iterable, Sequence

from .exact_scalar import LambdaDescriptor, LogPolynomial

__all__ = [
    "TruncatedSeries",
    "NonInvertibleConstantTerm",
    "binomial_convolve",
    "series_mul",
    "series_div",
    "factor_t",
    "OrderOne",
    "OrderR",
    "Barnes",
    "Generalized",
    "expand_gf",
    "lambda_factor",
]


class NonInvertibleConstantTerm(ZeroDivisionError):
    pass


def binomial_convolve(a: Sequence, b: Sequence, n_max: int | None = None) -> list:
    """c_n = sum_k C(n,k) a_k b_{n-k}; works on any ring elements."""
    if n_max is None:
        n_max = min(len(a), len(b)) - 1
    out = []
    for n in range(n_max + 1):
        acc = 0
        for k in range(n + 1):
            x, y = a[k], b[n - k]
            if x == 0 or y == 0:
                continue
            acc = acc + comb(n, k) * x * y
        out.append(acc)
    return out


class TruncatedSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(LogPolynomial.coerce(c) for c in coeffs)
        if not cs:
            raise ValueError("series needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> LogPolynomial:
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    @classmethod
    def one(cls, K: int) -> "TruncatedSeries":
        return cls([1] + [0] * K)

    @classmethod
    def exp(cls, a, K: int) -> "TruncatedSeries":
        """e^{a t}."""
        return cls([a**n if n else 1 for n in range(K + 1)])

    @classmethod
    def t_power(cls, r: int, K: int) -> "TruncatedSeries":
        """t^r, whose t^n/n! coefficient is r! at n = r."""
        cs = [0] * (K + 1)
        if r <= K:
            cs[r] = _factorial(r)
        return cls(cs)

    def truncate(self, K: int) -> "TruncatedSeries":
        if K > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: K + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_orders(self, other)
        return TruncatedSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_orders(self, other)
        return TruncatedSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(a * c for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_div(self, other)

    def __pow__(self, r: int) -> "TruncatedSeries":
        result = TruncatedSeries.one(self.order)
        for _ in range(r):
            result = series_mul(result, self)
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return len(self) == len(other) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r})"


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _check_orders(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.order != g.order:
        raise ValueError(f"truncation orders differ: {f.order} vs {g.order}")


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_orders(f, g)
    return TruncatedSeries(binomial_convolve(f.coeffs, g.coeffs))


def series_div(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Quotient h with h*g = f; g's constant term must be a nonzero L-free scalar."""
    _check_orders(f, g)
    g0 = g.coeffs[0]
    if g0.is_zero() or g0.degree > 0:
        raise NonInvertibleConstantTerm(
            "constant term of the divisor is not an invertible scalar; cancel t first"
        )
    inv = 1 / g0.scalar()
    h: list[LogPolynomial] = []
    for n in range(f.order + 1):
        acc = f.coeffs[n]
        for k in range(n):
            gk = g.coeffs[n - k]
            if not gk.is_zero() and not h[k].is_zero():
                acc = acc - comb(n, k) * h[k] * gk
        h.append(acc * inv)
    return TruncatedSeries(h)


def factor_t(f: TruncatedSeries) -> TruncatedSeries:
    """f / t for f with zero constant term; the result has order one less."""
    if not f.coeffs[0].is_zero():
        raise NonInvertibleConstantTerm("series has nonzero constant term; t does not divide it")
    return TruncatedSeries(f.coeffs[n + 1] / (n + 1) for n in range(f.order))


@dataclass(frozen=True)
class OrderOne:
    lam: LambdaDescriptor
    x: Fraction = Fraction(0)


@dataclass(frozen=True)
class OrderR:
    lam: LambdaDescriptor
    r: int
    x: Fraction = Fraction(0)


@dataclass(frozen=True)
class Barnes:
    lam: LambdaDescriptor
    weights: tuple[int, ...]


@dataclass(frozen=True)
class Generalized:
    """Character-twisted kind; ``chi`` needs ``modulus`` and ``__call__``."""

    chi: Any
    lam: LambdaDescriptor
    F: int | None = None


def lambda_factor(lam: LambdaDescriptor, w: int, K: int) -> TruncatedSeries:
    """(log lambda^w + w t) / (lambda^w e^{w t} - 1) to order K, by long division.

    In root-of-unity and lambda = 1 modes the log term is 0; when lambda^w = 1
    the common factor t is cancelled symbolically before dividing.
    """
    lw = lam.pow(w)
    num = [lw.log, w] + [0] * (K)
    den_val = lw.value
    den = [den_val - 1] + [den_val * w**n for n in range(1, K + 2)]
    num_s, den_s = TruncatedSeries(num[: K + 2]), TruncatedSeries(den[: K + 2])
    if lw.is_one:
        return series_div(factor_t(num_s), factor_t(den_s))
    return series_div(num_s.truncate(K), den_s.truncate(K))


def expand_gf(kind, K: int) -> TruncatedSeries:
    """Exact expansion of the named generating function through t^K/K!."""
    if isinstance(kind, OrderOne):
        return series_mul(lambda_factor(kind.lam, 1, K), TruncatedSeries.exp(Fraction(kind.x), K))
    if isinstance(kind, OrderR):
        if kind.r < 1:
            raise ValueError("order r must be positive")
        base = lambda_factor(kind.lam, 1, K)
        return series_mul(base**kind.r, TruncatedSeries.exp(Fraction(kind.x), K))
    if isinstance(kind, Barnes):
        result = TruncatedSeries.one(K)
        for w in kind.weights:
            if not isinstance(w, int) or w < 1:
                raise ValueError("Barnes weights must be positive integers")
            result = series_mul(result, lambda_factor(kind.lam, w, K))
        return result
    if isinstance(kind, Generalized):
        return _generalized_gf(kind, K)
    raise TypeError(f"unknown generating-function kind {kind!r}")


def _generalized_gf(kind: Generalized, K: int) -> TruncatedSeries:
    # sum_{a=1}^{F} chi(a) lam^a (log lam + t) e^{a t} / (lam^F e^{F t} - 1)
    chi, lam = kind.chi, kind.lam
    F = kind.F or chi.modulus
    lamF = lam.pow(F)
    lv = lam.value
    L = lam.log
    num = [LogPolynomial() for _ in range(K + 2)]
    for a in range(1, F + 1):
        c = chi(a)
        if c == 0:
            continue
        w = c * lv**a
        for n in range(K + 2):
            term = L * (a**n) + (n * a ** (n - 1) if n else 0)
            num[n] = num[n] + term * w
    dv = lamF.value
    den = [dv - 1] + [dv * F**n for n in range(1, K + 2)]
    num_s, den_s = TruncatedSeries(num), TruncatedSeries(den)
    if lamF.is_one:
        return series_div(factor_t(num_s), factor_t(den_s))
    return series_div(num_s.truncate(K), den_s.truncate(K))
