"""lambda-Bernoulli numbers B_n(lambda), polynomials B_n(lambda; x) and their relatives.

Generating function: (log lambda + t) / (lambda e^t - 1) * e^{x t}.  Values are
:class:`LogPolynomial` in the formal symbol L; for a descriptor lambda = b^d the
logarithm is d*L, which lets identities relating lambda and lambda^d live in a
single ring.  Root-of-unity descriptors drop the log term (L-degree 0) and
lambda = 1 is the classical branch t / (e^t - 1).
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .exact_scalar import LambdaDescriptor, LogPolynomial
from .frobenius_euler import InvalidParameter, fe_numbers
from .series_oracle import binomial_convolve

__all__ = [
    "classical_bernoulli",
    "lb_numbers",
    "lb_number",
    "lb_number_via_fe",
    "lb_poly",
    "lb_distribution_rhs",
    "gauss_mult_rhs",
    "q_integer",
    "mult_rearranged_rhs",
    "sum_of_powers",
    "sum_of_powers_direct",
    "lb_order_r_row",
    "lb_order_r",
    "barnes_multiweight",
]

_ZERO = LogPolynomial()
_ONE = LogPolynomial([1])

_rows: dict[LambdaDescriptor, list[LogPolynomial]] = {}
_lock = threading.Lock()


def classical_bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    return lb_number(LambdaDescriptor.one(), n).scalar()


def _extend(lam: LambdaDescriptor, row: list[LogPolynomial], n_max: int) -> None:
    if lam.is_one:
        # (e^t - 1) B(t) = t:  sum_{k<=n} C(n+1, k) B_k = 0 for n >= 1
        if not row:
            row.append(_ONE)
        for n in range(len(row), n_max + 1):
            acc = _ZERO
            for k in range(n):
                acc = acc + comb(n + 1, k) * row[k]
            row.append(acc / -(n + 1))
        return
    # lambda (B + 1)^n - B_n = log(lambda) [n == 0] + [n == 1]
    v = lam.value
    inv = 1 / (v - 1)
    if not row:
        row.append(lam.log * inv)
    for n in range(len(row), n_max + 1):
        acc = _ONE if n == 1 else _ZERO
        s = _ZERO
        for k in range(n):
            if not row[k].is_zero():
                s = s + comb(n, k) * row[k]
        acc = acc - s * v
        row.append(acc * inv)


def lb_numbers(lam: LambdaDescriptor, n_max: int) -> list[LogPolynomial]:
    """[B_0(lambda), ..., B_{n_max}(lambda)] by the umbral recurrence."""
    with _lock:
        row = _rows.get(lam)
        if row is not None and len(row) > n_max:
            return row[: n_max + 1]
        row = list(row) if row else []
    _extend(lam, row, n_max)
    with _lock:
        if len(_rows.get(lam, ())) < len(row):
            _rows[lam] = row
    return row[: n_max + 1]


def lb_number(lam: LambdaDescriptor, n: int) -> LogPolynomial:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return lb_numbers(lam, n)[n]


def lb_number_via_fe(lam: LambdaDescriptor, n: int) -> LogPolynomial:
    """B_n(lambda) from Frobenius-Euler numbers at u = 1/lambda."""
    if lam.is_one:
        raise InvalidParameter("the Frobenius-Euler link needs lambda != 1")
    v = lam.value
    H = fe_numbers(1 / v, n)
    inv = 1 / (v - 1)
    out = lam.log * (H[n] * inv)
    if n >= 1:
        out = out + n * H[n - 1] * inv
    return out


def lb_poly(lam: LambdaDescriptor, x, n: int) -> LogPolynomial:
    """B_n(lambda; x) = sum_k C(n, k) B_k(lambda) x^(n-k)."""
    x = Fraction(x)
    row = lb_numbers(lam, n)
    if x == 0:
        return row[n]
    acc = _ZERO
    xp = Fraction(1)
    for k in range(n, -1, -1):
        if not row[k].is_zero():
            acc = acc + row[k] * (comb(n, k) * xp)
        xp *= x
    return acc


def lb_distribution_rhs(lam: LambdaDescriptor, x, n: int, d: int) -> LogPolynomial:
    """d^(n-1) sum_{a<d} lambda^a B_n(lambda^d; (x + a)/d); equals B_n(lambda; x)."""
    if d < 1:
        raise ValueError("d must be positive")
    x = Fraction(x)
    lam_d = lam.pow(d)
    v = lam.value
    acc = _ZERO
    for a in range(d):
        acc = acc + lb_poly(lam_d, (x + a) / d, n) * v**a
    return acc * Fraction(d) ** (n - 1)


def _power_sum(v, m: int, e: int, start: int = 0):
    # sum_{a=start}^{m-1} v^a a^e with 0^0 = 1
    acc = 0
    for a in range(start, m):
        acc = acc + v**a * (a**e)
    return acc


def gauss_mult_rhs(lam: LambdaDescriptor, n: int, m: int) -> LogPolynomial:
    """sum_j C(n, j) B_j(lambda^m) m^j sum_{a<m} lambda^a a^(n-j); equals m B_n(lambda)."""
    if m < 1:
        raise ValueError("m must be positive")
    row = lb_numbers(lam.pow(m), n)
    v = lam.value
    acc = _ZERO
    for j in range(n + 1):
        inner = _power_sum(v, m, n - j)
        if inner != 0:
            acc = acc + row[j] * (comb(n, j) * m**j * inner)
    return acc


def q_integer(lam: LambdaDescriptor, m: int):
    """[m]_lambda = (1 - lambda^m)/(1 - lambda) = 1 + lambda + ... + lambda^(m-1)."""
    return _power_sum(lam.value, m, 0)


def mult_rearranged_rhs(lam: LambdaDescriptor, n: int, m: int) -> LogPolynomial:
    """sum_{j<n} C(n, j) B_j(lambda^m) m^j sum_{k=1}^{m-1} lambda^k k^(n-j).

    Equals m B_n(lambda) - m^n [m]_lambda B_n(lambda^m).
    """
    row = lb_numbers(lam.pow(m), n)
    v = lam.value
    acc = _ZERO
    for j in range(n):
        inner = _power_sum(v, m, n - j, start=1)
        if inner != 0:
            acc = acc + row[j] * (comb(n, j) * m**j * inner)
    return acc


def sum_of_powers(lam: LambdaDescriptor, l: int, k: int) -> LogPolynomial:
    """B_l(lambda; k) - lambda^(-k) B_l(lambda)."""
    if k < 1:
        raise ValueError("k must be positive")
    vk = lam.value ** (-k)
    return lb_poly(lam, k, l) - lb_number(lam, l) * vk


def sum_of_powers_direct(lam: LambdaDescriptor, l: int, k: int) -> LogPolynomial:
    """lambda^(-k) [ l sum_{n<k} lambda^n n^(l-1) + log(lambda) sum_{n<k} lambda^n n^l ]."""
    v = lam.value
    first = l * _power_sum(v, k, l - 1) if l >= 1 else 0
    out = LogPolynomial([first])
    if lam.log_coeff:
        out = out + lam.log * _power_sum(v, k, l)
    return out * v ** (-k)


def lb_order_r_row(lam: LambdaDescriptor, r: int, x, n_max: int) -> list[LogPolynomial]:
    """B^(r)_0..B^(r)_{n_max}(lambda; x) as r-fold binomial convolutions of the order-1 row."""
    if r < 1:
        raise ValueError("order r must be positive")
    base = lb_numbers(lam, n_max)
    row = base
    for _ in range(r - 1):
        row = binomial_convolve(row, base, n_max)
    x = Fraction(x)
    if x:
        row = binomial_convolve(row, [x**k for k in range(n_max + 1)], n_max)
    return [LogPolynomial.coerce(c) for c in row]


def lb_order_r(lam: LambdaDescriptor, r: int, x, n: int) -> LogPolynomial:
    return lb_order_r_row(lam, r, x, n)[n]


def barnes_multiweight(lam: LambdaDescriptor, weights, n: int) -> LogPolynomial:
    """Coefficient of t^n/n! in prod_i (w_i log lambda + w_i t)/(lambda^{w_i} e^{w_i t} - 1).

    The weight-w factor is sum_m w^m B_m(lambda^w) t^m/m!.
    """
    weights = tuple(weights)
    if any(not isinstance(w, int) or w < 1 for w in weights):
        raise ValueError("Barnes weights must be positive integers")
    row: list = [_ONE] + [_ZERO] * n
    for w in weights:
        b = lb_numbers(lam.pow(w), n)
        factor = [b[m] * w**m for m in range(n + 1)]
        row = binomial_convolve(row, factor, n)
    return LogPolynomial.coerce(row[n])
