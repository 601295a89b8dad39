"""Frobenius-Euler numbers H_n(u), polynomials H_n(u, x) and their order-r versions.

Generating function: ((1 - u) / (e^t - u))^r e^{x t}.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .exact_scalar import CyclotomicElement
from .series_oracle import binomial_convolve

__all__ = ["InvalidParameter", "fe_number", "fe_numbers", "fe_poly", "fe_order_r", "fe_order_r_row"]


class InvalidParameter(ValueError):
    pass


_rows: dict[tuple, list] = {}
_lock = threading.Lock()


def _key(u) -> tuple:
    if isinstance(u, CyclotomicElement):
        return ("c", u.m, u.coeffs)
    return ("q", Fraction(u))


def _check(u):
    if isinstance(u, CyclotomicElement):
        if u.is_rational():
            u = u.to_rational()
    else:
        u = Fraction(u)
    if u == 1:
        raise InvalidParameter("Frobenius-Euler parameter u must differ from 1")
    return u


def fe_numbers(u, n_max: int) -> list:
    """[H_0(u), ..., H_{n_max}(u)] from (e^t - u) * sum H_n t^n/n! = 1 - u."""
    u = _check(u)
    key = _key(u)
    with _lock:
        row = _rows.get(key)
        if row is not None and len(row) > n_max:
            return row[: n_max + 1]
        row = list(row) if row else [Fraction(1)]
    inv = 1 / (u - 1)
    for n in range(len(row), n_max + 1):
        acc = 0
        for k in range(n):
            acc = acc + comb(n, k) * row[k]
        row.append(acc * inv)
    with _lock:
        if len(_rows.get(key, ())) < len(row):
            _rows[key] = row
    return row[: n_max + 1]


def fe_number(u, n: int):
    if n < 0:
        raise ValueError("n must be nonnegative")
    return fe_numbers(u, n)[n]


def fe_poly(u, x, n: int):
    """H_n(u, x) = sum_k C(n, k) H_k(u) x^(n-k)."""
    x = Fraction(x)
    row = fe_numbers(u, n)
    acc = 0
    for k in range(n + 1):
        acc = acc + comb(n, k) * row[k] * x ** (n - k)
    return acc


def fe_order_r_row(u, r: int, x, n_max: int) -> list:
    if r < 1:
        raise InvalidParameter("order r must be positive")
    base = fe_numbers(u, n_max)
    row = base
    for _ in range(r - 1):
        row = binomial_convolve(row, base, n_max)
    x = Fraction(x)
    if x:
        row = binomial_convolve(row, [x**k for k in range(n_max + 1)], n_max)
    return row


def fe_order_r(u, r: int, x, n: int):
    return fe_order_r_row(u, r, x, n)[n]
