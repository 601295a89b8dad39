"""Exact scalars: rationals, cyclotomic field elements, and polynomials in L = log(lambda).

Rationals are plain :class:`fractions.Fraction`.  Cyclotomic elements live in
Q(zeta_m) reduced modulo the m-th cyclotomic polynomial, so equality is
coefficientwise.  :class:`LogPolynomial` carries a formal symbol ``L`` standing
for ``log(lambda)`` of the base twist parameter; every lambda-Bernoulli value
is one of these.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "CyclotomicElement",
    "LogPolynomial",
    "LambdaDescriptor",
    "ZeroInverse",
    "OrderMismatch",
    "DivisorNotScalar",
    "InvalidLambda",
    "cyclotomic_poly",
    "euler_phi",
    "cyclotomic_arith",
    "logpoly_arith",
    "lambda_pow",
    "format_rational",
    "parse_rational",
    "scalar_to_json",
    "scalar_from_json",
    "to_complex",
]

Rational = Fraction


class ZeroInverse(ZeroDivisionError):
    pass


class OrderMismatch(ValueError):
    pass


class DivisorNotScalar(ValueError):
    pass


class InvalidLambda(ValueError):
    pass


def euler_phi(n: int) -> int:
    result = n
    q = 2
    m = n
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result


def _int_poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; coefficients ascending
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _int_poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _reduce(coeffs: Sequence[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    work[base + j] -= c * phi[j]
    work = work[:deg]
    work.extend([Fraction(0)] * (deg - len(work)))
    return tuple(work)


def _poly_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        _poly_trim(a)
    return q, a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _poly_trim([Fraction(c) for c in out])


class CyclotomicElement:
    """An element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable = ()):
        coeffs = list(coeffs)
        if m < 1:
            raise ValueError("cyclotomic order must be positive")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", _reduce(coeffs, m))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicElement is immutable")

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CyclotomicElement":
        k %= m
        return cls(m, [0] * k + [1])

    @classmethod
    def from_rational(cls, m: int, q) -> "CyclotomicElement":
        return cls(m, [Fraction(q)])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def embed(self, M: int) -> "CyclotomicElement":
        """Image under Q(zeta_m) -> Q(zeta_M), zeta_m -> zeta_M^(M/m)."""
        if M == self.m:
            return self
        if M % self.m:
            raise OrderMismatch(f"cannot embed Q(zeta_{self.m}) into Q(zeta_{M})")
        step = M // self.m
        out = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = c
        return CyclotomicElement(M, out)

    def _coerce(self, other) -> tuple["CyclotomicElement", "CyclotomicElement"] | None:
        if isinstance(other, CyclotomicElement):
            if other.m == self.m:
                return self, other
            M = math.lcm(self.m, other.m)
            return self.embed(M), other.embed(M)
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicElement(self.m, [other])
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return cyclotomic_arith(pair[0], pair[1], "add")

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return cyclotomic_arith(pair[0], -pair[1], "add")

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return cyclotomic_arith(pair[1], -pair[0], "add")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement(self.m, [c * other for c in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return cyclotomic_arith(pair[0], pair[1], "mul")

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        return cyclotomic_arith(self, self, "inv")

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroInverse("division by zero")
            return CyclotomicElement(self.m, [c / other for c in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return cyclotomic_arith(pair[0], cyclotomic_arith(pair[1], pair[1], "inv"), "mul")

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return cyclotomic_arith(pair[1], cyclotomic_arith(pair[0], pair[0], "inv"), "mul")

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = CyclotomicElement(self.m, [1])
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0].coeffs == pair[1].coeffs

    # equal elements may have different (m, coeffs) pairs across orders
    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        z = cmath.exp(2j * math.pi / self.m)
        return complex(sum(float(c) * z**i for i, c in enumerate(self.coeffs) if c))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.m}^{i}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [format_rational(c) for c in self.coeffs]}


def cyclotomic_arith(a: CyclotomicElement, b: CyclotomicElement, op: str) -> CyclotomicElement:
    """Single-order field kernel: ``op`` is ``add``, ``mul`` or ``inv`` (of ``a``)."""
    if a.m != b.m:
        raise OrderMismatch(f"orders differ: {a.m} vs {b.m}")
    m = a.m
    if op == "add":
        return CyclotomicElement(m, [x + y for x, y in zip(a.coeffs, b.coeffs)])
    if op == "mul":
        return CyclotomicElement(m, _poly_mul(a.coeffs, b.coeffs))
    if op == "inv":
        if a.is_zero():
            raise ZeroInverse("inverse of zero")
        # extended Euclid: s*a + t*Phi_m = g, g a nonzero constant
        r0 = [Fraction(c) for c in cyclotomic_poly(m)]
        r1 = _poly_trim(list(a.coeffs))
        s0: list = []
        s1: list = [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        g = r1[0]
        return CyclotomicElement(m, [c / g for c in s1])
    raise ValueError(f"unknown op {op!r}")


Scalar = Union[Fraction, CyclotomicElement]


def _canon(c) -> Scalar:
    if isinstance(c, CyclotomicElement):
        return c.coeffs[0] if c.is_rational() else c
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def _is_zero(c) -> bool:
    return c == 0 if not isinstance(c, CyclotomicElement) else c.is_zero()


class LogPolynomial:
    """a_0 + a_1 L + ... + a_r L^r with exact coefficients; trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_canon(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LogPolynomial is immutable")

    @classmethod
    def L(cls, scale=1) -> "LogPolynomial":
        return cls([0, scale])

    @classmethod
    def coerce(cls, x) -> "LogPolynomial":
        if isinstance(x, LogPolynomial):
            return x
        return cls([x])

    @property
    def degree(self) -> int:
        """Degree in L; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def base(self) -> int:
        """Cyclotomic order of the coefficient field (1 for Q)."""
        m = 1
        for c in self.coeffs:
            if isinstance(c, CyclotomicElement):
                m = math.lcm(m, c.m)
        return m

    def coeff(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def scalar(self) -> Scalar:
        if self.degree > 0:
            raise DivisorNotScalar("polynomial has positive L-degree")
        return self.coeff(0)

    def __add__(self, other):
        if not isinstance(other, LogPolynomial):
            if not isinstance(other, (int, Fraction, CyclotomicElement)):
                return NotImplemented
            other = LogPolynomial([other])
        return logpoly_arith(self, other, "add")

    __radd__ = __add__

    def __neg__(self):
        return LogPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, LogPolynomial):
            if not isinstance(other, (int, Fraction, CyclotomicElement)):
                return NotImplemented
            other = LogPolynomial([other])
        return logpoly_arith(self, -other, "add")

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            if _is_zero(other):
                return LogPolynomial()
            return LogPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, LogPolynomial):
            return NotImplemented
        return logpoly_arith(self, other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            other = LogPolynomial([other])
        if not isinstance(other, LogPolynomial):
            return NotImplemented
        return logpoly_arith(self, other, "div_by_scalar")

    def __pow__(self, e: int):
        result = LogPolynomial([1])
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            other = LogPolynomial([other])
        if not isinstance(other, LogPolynomial):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def evaluate(self, L_value: complex) -> complex:
        """Numeric value with L replaced by ``L_value`` (coefficients via principal zeta_m)."""
        total = 0j
        for c in reversed(self.coeffs):
            total = total * L_value + to_complex(c)
        return total

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            cs = f"({c})" if isinstance(c, CyclotomicElement) else str(c)
            parts.append(cs if i == 0 else f"{cs}*L" if i == 1 else f"{cs}*L^{i}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        cs = self.coeffs or (Fraction(0),)
        return {"L_coeffs": [scalar_to_json(c) for c in cs]}

    @classmethod
    def from_json(cls, obj: dict) -> "LogPolynomial":
        return cls(scalar_from_json(c) for c in obj["L_coeffs"])


def logpoly_arith(a: LogPolynomial, b: LogPolynomial, op: str) -> LogPolynomial:
    if op == "add":
        n = max(len(a.coeffs), len(b.coeffs))
        return LogPolynomial(a.coeff(i) + b.coeff(i) for i in range(n))
    if op == "mul":
        if a.is_zero() or b.is_zero():
            return LogPolynomial()
        out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if _is_zero(x):
                continue
            for j, y in enumerate(b.coeffs):
                if not _is_zero(y):
                    out[i + j] = out[i + j] + x * y
        return LogPolynomial(out)
    if op == "div_by_scalar":
        if b.degree > 0:
            raise DivisorNotScalar("divisor has positive L-degree")
        if b.is_zero():
            raise ZeroDivisionError("division by zero LogPolynomial")
        d = b.coeffs[0]
        if isinstance(d, CyclotomicElement):
            inv = d.inverse()
            return LogPolynomial([c * inv for c in a.coeffs])
        return LogPolynomial([c / d for c in a.coeffs])
    raise ValueError(f"unknown op {op!r}")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def scalar_to_json(c):
    if isinstance(c, CyclotomicElement):
        return c.to_json()
    return format_rational(c)


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        return _canon(CyclotomicElement(obj["m"], [Fraction(x) for x in obj["coeffs"]]))
    return Fraction(obj)


def to_complex(c) -> complex:
    if isinstance(c, LogPolynomial):
        raise TypeError("use LogPolynomial.evaluate")
    return complex(c) if isinstance(c, CyclotomicElement) else complex(float(c))


@dataclass(frozen=True)
class LambdaDescriptor:
    """The twist parameter lambda in one of three exact modes.

    ``rational``: lambda = base**power with log(lambda) = power * L.
    ``root``: lambda = zeta_m^k (primitive of order m after normalisation), log taken as 0.
    ``one``: classical lambda = 1.
    """

    mode: str
    base: Fraction | None = None
    power: int = 1
    m: int = 1
    k: int = 0

    @classmethod
    def one(cls) -> "LambdaDescriptor":
        return cls("one")

    @classmethod
    def rational(cls, q, power: int = 1) -> "LambdaDescriptor":
        q = Fraction(q)
        if q == 0:
            raise InvalidLambda("lambda = 0 is not allowed")
        if q == 1:
            raise InvalidLambda("rational lambda must differ from 1; use LambdaDescriptor.one()")
        if power < 1:
            raise InvalidLambda("power must be positive")
        if q == -1:
            return cls._root(2, power)
        return cls("rational", base=q, power=power)

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> "LambdaDescriptor":
        if m < 1:
            raise InvalidLambda("root-of-unity order must be positive")
        if k % m == 0:
            raise InvalidLambda(f"zeta_{m}^{k} = 1; use LambdaDescriptor.one()")
        return cls._root(m, k)

    @classmethod
    def _root(cls, m: int, k: int) -> "LambdaDescriptor":
        k %= m
        if k == 0:
            return cls.one()
        g = math.gcd(m, k)
        return cls("root", m=m // g, k=k // g)

    @classmethod
    def parse(cls, spec: str) -> "LambdaDescriptor":
        """Grammar: ``1`` | ``R:<num>/<den>`` | ``Z:<m>,<k>``."""
        spec = spec.strip()
        if spec == "1":
            return cls.one()
        kind, sep, rest = spec.partition(":")
        if not sep:
            raise ValueError(f"malformed lambda spec {spec!r}")
        if kind.upper() == "R":
            try:
                q = Fraction(rest)
            except ValueError as exc:
                raise ValueError(f"malformed rational in {spec!r}") from exc
            return cls.rational(q)
        if kind.upper() == "Z":
            parts = rest.split(",")
            if len(parts) != 2:
                raise ValueError(f"malformed root of unity in {spec!r}")
            try:
                m, k = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"malformed root of unity in {spec!r}") from exc
            return cls.root_of_unity(m, k)
        raise ValueError(f"unknown lambda mode in {spec!r}")

    @property
    def is_one(self) -> bool:
        return self.mode == "one"

    @property
    def is_root(self) -> bool:
        return self.mode == "root"

    @property
    def is_rational(self) -> bool:
        return self.mode == "rational"

    @property
    def log_coeff(self) -> int:
        """Multiple of L equal to log(lambda)."""
        return self.power if self.mode == "rational" else 0

    @property
    def log(self) -> LogPolynomial:
        return LogPolynomial.L(self.log_coeff)

    @property
    def value(self) -> Scalar:
        if self.mode == "rational":
            return self.base**self.power
        if self.mode == "root":
            return _canon(CyclotomicElement.zeta(self.m, self.k))
        return Fraction(1)

    @property
    def order(self) -> int | None:
        """Multiplicative order for roots of unity (1 for lambda = 1), else None."""
        if self.mode == "root":
            return self.m
        return 1 if self.mode == "one" else None

    def pow(self, e: int) -> "LambdaDescriptor":
        return lambda_pow(self, e)

    def spec(self) -> str:
        if self.mode == "one":
            return "1"
        if self.mode == "root":
            return f"Z:{self.m},{self.k}"
        b = self.base
        s = f"R:{b.numerator}/{b.denominator}"
        return s if self.power == 1 else f"{s}^{self.power}"

    def to_json(self) -> dict:
        out = {"spec": self.spec(), "mode": self.mode, "log_coeff": self.log_coeff}
        out["value"] = scalar_to_json(self.value)
        return out


def lambda_pow(lam: LambdaDescriptor, e: int) -> LambdaDescriptor:
    if e < 1:
        raise ValueError("exponent must be positive")
    if lam.mode == "one" or e == 1:
        return lam
    if lam.mode == "root":
        return LambdaDescriptor._root(lam.m, lam.k * e)
    return LambdaDescriptor("rational", base=lam.base, power=lam.power * e)
