"""Finite-precision p-adic numbers and the p-adic side of the lambda-Bernoulli story.

Everything here works with odd primes only.  A :class:`PadicInt` carries the
absolute precision it actually knows; operations lower that precision when a
division by p eats digits, instead of pretending to keep N digits.

Roots of unity of order dividing p - 1 are mapped into Z_p by sending zeta_m to
omega(g)^((p-1)/m), g the least primitive root mod p.  The Teichmuller
character built by :func:`teichmuller_character` uses the same identification,
so exact cyclotomic values and p-adic values can be compared directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dirichlet import DirichletCharacter, generalized_bernoulli, primitive_root
from .exact_scalar import CyclotomicElement, LambdaDescriptor, LogPolynomial
from .lambda_bernoulli import lb_numbers, lb_poly
from .special_values import partial_zeta_neg

__all__ = [
    "NotAUnit",
    "OutsideDomain",
    "PrecisionLoss",
    "CharacterNotRepresentable",
    "PadicInt",
    "TeichmullerValue",
    "valuation",
    "teichmuller",
    "one_unit",
    "padic_log",
    "embed_cyclotomic",
    "embed_logpoly",
    "teichmuller_character",
    "volkenborn_sum",
    "volkenborn_diagnostics",
    "h_p_lambda_neg",
    "h_p_lambda_neg_closed",
    "l_p_lambda_neg",
    "l_p_lambda_neg_euler",
    "kummer_diagnostic",
    "MAX_PREC",
    "L_P_SHORTFALL",
]

MAX_PREC = 64
# routes of L_{p,lambda} are asserted to agree modulo p^(N - L_P_SHORTFALL)
L_P_SHORTFALL = 1


class NotAUnit(ValueError):
    pass


class OutsideDomain(ValueError):
    pass


class PrecisionLoss(ArithmeticError):
    pass


class CharacterNotRepresentable(ValueError):
    pass


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % q for q in range(3, math.isqrt(p) + 1, 2))


def _check_prime(p: int) -> None:
    if not _is_odd_prime(p):
        raise ValueError(f"p = {p} is not an odd prime")


def valuation(q, p: int) -> int | None:
    """v_p of a nonzero rational; None for zero."""
    q = Fraction(q)
    if q == 0:
        return None
    v = 0
    n, d = q.numerator, q.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


class PadicInt:
    """residue * p^(-shift), known modulo p^prec (absolute precision).

    ``residue`` is reduced modulo p^(prec + shift).  With shift = 0 this is the
    usual residue in [0, p^prec).
    """

    __slots__ = ("p", "prec", "residue", "shift")

    def __init__(self, p: int, prec: int, residue: int, shift: int = 0):
        if shift < 0:
            residue *= p ** (-shift)
            shift = 0
        mod_exp = max(prec + shift, 0)
        residue %= p**mod_exp
        while shift and residue % p == 0 and mod_exp > 0:
            residue //= p
            shift -= 1
            mod_exp -= 1
        self.p = p
        self.prec = prec
        self.residue = residue
        self.shift = shift

    # constructors

    @classmethod
    def from_rational(cls, q, p: int, prec: int) -> "PadicInt":
        q = Fraction(q)
        v = valuation(q, p)
        if v is None or v >= 0:
            num, den = q.numerator, q.denominator
            mod = p**prec
            return cls(p, prec, num * pow(den, -1, mod) % mod if prec > 0 else 0)
        d = q.denominator // p ** (-v)
        mod = p ** (prec - v)
        return cls(p, prec, q.numerator * pow(d, -1, mod), -v)

    @classmethod
    def zero(cls, p: int, prec: int) -> "PadicInt":
        return cls(p, prec, 0)

    # queries

    def valuation(self) -> int:
        """v_p of the value, or ``prec`` when it is zero to the known precision."""
        r = self.residue
        if r == 0:
            return self.prec
        v = 0
        while r % self.p == 0:
            r //= self.p
            v += 1
        return min(v - self.shift, self.prec)

    def is_zero(self) -> bool:
        return self.valuation() >= self.prec

    def is_unit(self) -> bool:
        return self.prec > 0 and self.valuation() == 0

    def with_prec(self, prec: int) -> "PadicInt":
        return PadicInt(self.p, min(prec, self.prec), self.residue, self.shift)

    def to_rational(self) -> Fraction:
        """The stored representative as a rational number."""
        return Fraction(self.residue, self.p**self.shift)

    def agrees(self, other, k: int | None = None) -> bool:
        """True when self and other agree modulo p^k (default: common precision)."""
        diff = self - other
        k = diff.prec if k is None else k
        if k > diff.prec:
            return False
        return diff.valuation() >= k

    # arithmetic

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("p-adic numbers for different primes")
            return other
        q = Fraction(other)
        vq = valuation(q, self.p) or 0
        return PadicInt.from_rational(q, self.p, self.prec + abs(vq) + self.shift + 1)

    def __add__(self, other):
        b = self._coerce(other)
        s = max(self.shift, b.shift)
        r = self.residue * self.p ** (s - self.shift) + b.residue * self.p ** (s - b.shift)
        return PadicInt(self.p, min(self.prec, b.prec), r, s)

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, self.prec, -self.residue, self.shift)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        b = self._coerce(other)
        va, vb = self.valuation(), b.valuation()
        prec = min(va + b.prec, vb + self.prec)
        return PadicInt(self.p, prec, self.residue * b.residue, self.shift + b.shift)

    __rmul__ = __mul__

    def inverse(self) -> "PadicInt":
        v = self.valuation()
        if v >= self.prec:
            raise ZeroDivisionError("p-adic value is zero to the known precision")
        unit = self.residue // self.p ** (v + self.shift)
        mod_exp = self.prec - v
        u_inv = pow(unit, -1, self.p**mod_exp)
        return PadicInt(self.p, self.prec - 2 * v, u_inv, v)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = PadicInt(self.p, self.prec + e * max(0, -self.valuation()) + 1, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result if result.prec <= self.prec else result.with_prec(self.prec)

    def __repr__(self):
        if self.shift:
            return f"PadicInt({self.residue} / {self.p}^{self.shift} + O({self.p}^{self.prec}))"
        return f"PadicInt({self.residue} + O({self.p}^{self.prec}))"

    def to_json(self) -> dict:
        out = {"residue": str(self.residue), "p": self.p, "prec_guaranteed": self.prec}
        if self.shift:
            out["shift"] = self.shift
        return out


@dataclass(frozen=True)
class TeichmullerValue:
    a: int
    value: PadicInt


def teichmuller(a: int, p: int, N: int) -> TeichmullerValue:
    """omega(a): the (p-1)-th root of unity congruent to a mod p."""
    _check_prime(p)
    if a % p == 0:
        raise NotAUnit(f"{a} is divisible by {p}")
    mod = p**N
    x = a % mod
    while True:
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return TeichmullerValue(a % p, PadicInt(p, N, x))


def _omega_value(a, p: int, N: int) -> PadicInt:
    if isinstance(a, Fraction):
        if a.denominator % p == 0 or a.numerator % p == 0:
            raise NotAUnit(f"{a} is not a p-adic unit")
        return teichmuller(a.numerator, p, N).value / teichmuller(a.denominator, p, N).value
    return teichmuller(a, p, N).value


def one_unit(a, p: int, N: int) -> PadicInt:
    """<a> = a / omega(a), congruent to 1 mod p."""
    a = Fraction(a)
    return PadicInt.from_rational(a, p, N) / _omega_value(a, p, N)


def padic_log(x, p: int, N: int) -> PadicInt:
    """log_p x for x = 1 mod p, by the Mercator series.

    Terms (x-1)^k/k have valuation at least k*v - floor(log_p k); the sum stops
    once that bound reaches N.  Internally the series is run with enough guard
    digits to absorb the divisions by k.
    """
    _check_prime(p)
    if not isinstance(x, PadicInt):
        x = PadicInt.from_rational(x, p, N)
    N = min(N, x.prec)
    if x.shift or (x.residue - 1) % p:
        raise OutsideDomain("p-adic log needs x = 1 mod p")
    z = (x.residue - 1) % p**N
    if z == 0:
        return PadicInt(p, N, 0)
    v = valuation(z, p)
    # last needed k
    k_max = 1
    while (k_max + 1) * v - _ilog(k_max + 1, p) < N:
        k_max += 1
    guard = _ilog(k_max, p)
    mod = p ** (N + guard)
    total = 0
    zk = 1
    for k in range(1, k_max + 1):
        zk = zk * z % mod
        vk = valuation(k, p)
        # k*v >= v_p(k), so the division by p^vk is exact; the guard digits absorb it
        term = (zk // p**vk) * pow(k // p**vk, -1, mod)
        total += term if k % 2 else -term
    return PadicInt(p, N, total)


def _ilog(k: int, p: int) -> int:
    e = 0
    while k >= p:
        k //= p
        e += 1
    return e


def _zeta_image(m: int, p: int, N: int) -> PadicInt:
    if (p - 1) % m:
        raise CharacterNotRepresentable(f"roots of unity of order {m} do not lie in Z_{p}")
    g = primitive_root(p)
    w = teichmuller(g, p, N).value
    return w ** ((p - 1) // m)


def embed_cyclotomic(elem, p: int, N: int) -> PadicInt:
    """Image of a rational or cyclotomic number in Q_p, modulo p^N (absolute)."""
    if not isinstance(elem, CyclotomicElement):
        return PadicInt.from_rational(elem, p, N)
    if elem.is_rational():
        return PadicInt.from_rational(elem.to_rational(), p, N)
    vals = [valuation(c, p) for c in elem.coeffs if c]
    extra = max([0] + [-v for v in vals if v is not None])
    W = N + extra
    z = _zeta_image(elem.m, p, W)
    acc = PadicInt(p, W, 0)
    zi = PadicInt(p, W, 1)
    for c in elem.coeffs:
        if c:
            acc = acc + PadicInt.from_rational(c, p, W + extra) * zi
        zi = zi * z
    return acc.with_prec(N)


def embed_logpoly(value: LogPolynomial, p: int, N: int, L: PadicInt | None = None) -> PadicInt:
    """Evaluate a LogPolynomial in Q_p with L -> ``L`` (L-free values need no L)."""
    if value.degree <= 0:
        return embed_cyclotomic(value.scalar() if not value.is_zero() else 0, p, N)
    if L is None:
        raise ValueError("a p-adic value for L is required")
    acc = PadicInt(p, N, 0)
    Lk = PadicInt(p, N + 1, 1)
    for i in range(value.degree + 1):
        c = value.coeff(i)
        if c:
            acc = acc + embed_cyclotomic(c, p, N + 2 * abs(valuation_of(c, p))) * Lk
        Lk = Lk * L
    return acc


def valuation_of(c, p: int) -> int:
    if isinstance(c, CyclotomicElement):
        vals = [valuation(x, p) for x in c.coeffs if x]
        return min(vals) if vals else 0
    v = valuation(c, p)
    return 0 if v is None else v


def teichmuller_character(p: int) -> DirichletCharacter:
    """omega as an exact character mod p with values in Q(zeta_{p-1})."""
    _check_prime(p)
    g = primitive_root(p)
    exps: list[int | None] = [None] * p
    x = 1
    for j in range(p - 1):
        exps[x] = j
        x = x * g % p
    return DirichletCharacter(p, exps, p - 1)


# Volkenborn sums


def _rational_lambda(lam, p: int) -> Fraction:
    if isinstance(lam, LambdaDescriptor):
        if lam.is_root:
            raise OutsideDomain(
                "p^-M sum lambda^y f(y) diverges for roots of unity of order prime to p"
            )
        if lam.is_one:
            return Fraction(1)
        if (lam.base - 1) == 0 or valuation(lam.base - 1, p) < 1:
            raise OutsideDomain("rational lambda must have its base = 1 mod p")
        return lam.value
    q = Fraction(lam)
    if q != 1 and (valuation(q - 1, p) or 0) < 1:
        raise OutsideDomain("lambda must be 1 mod p")
    return q


def volkenborn_sum(lam, n: int, x, p: int, steps: int) -> list[Fraction]:
    """[S_1, ..., S_steps],  S_M = p^-M sum_{y < p^M} lambda^y (x + y)^n, exactly."""
    _check_prime(p)
    q = _rational_lambda(lam, p)
    x = Fraction(x)
    if x.denominator % p == 0:
        raise OutsideDomain("x must be a p-adic integer")
    a, b = q.numerator, q.denominator
    c, d = x.numerator, x.denominator
    out = []
    # running integer sum of a^y b^(Y-y) (c + d y)^n, rescaled as Y grows
    total = 0
    y = 0
    ay = 1
    for M in range(1, steps + 1):
        Y = p**M
        # bring previous terms to the new common denominator b^(Y-1)
        if y:
            total *= b ** (Y - y)
        while y < Y:
            total += ay * b ** (Y - 1 - y) * (c + d * y) ** n
            ay *= a
            y += 1
        out.append(Fraction(total, b ** (Y - 1) * d**n * p**M))
    return out


def volkenborn_diagnostics(lam, n: int, x, p: int, steps: int, work_prec: int | None = None) -> dict:
    """Valuations of S_M - B_n(lambda; x) with L -> log_p(base of lambda)."""
    sums = volkenborn_sum(lam, n, x, p, steps)
    desc = lam if isinstance(lam, LambdaDescriptor) else (
        LambdaDescriptor.one() if Fraction(lam) == 1 else LambdaDescriptor.rational(lam))
    W = work_prec or steps + 4 * (n + 2) + 10
    L = padic_log(desc.base, p, W + n + 4) if desc.is_rational else None
    exact = embed_logpoly(lb_poly(desc, x, n), p, W, L)
    vals = []
    for s in sums:
        diff = PadicInt.from_rational(s, p, W) - exact
        vals.append(diff.valuation())
    return {
        "partial_sums": sums,
        "exact": exact,
        "valuations": vals,
        "precision": exact.prec,
    }


# p-adic partial zeta and L values


def _check_root_lambda(lam: LambdaDescriptor, p: int) -> None:
    if lam.is_rational:
        raise OutsideDomain("p-adic interpolation needs lambda a root of unity or 1")
    if lam.is_root and (p - 1) % lam.m:
        raise CharacterNotRepresentable(f"lambda has order {lam.m}, which does not divide {p - 1}")


def _h_inputs(n: int, a: int, F: int, lam: LambdaDescriptor, p: int) -> None:
    _check_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    if F % p:
        raise ValueError(f"F = {F} must be a multiple of p = {p}")
    if not 0 < a <= F:
        raise ValueError(f"need 0 < a <= F, got a = {a}")
    if a % p == 0:
        raise NotAUnit(f"a = {a} is divisible by p")
    _check_root_lambda(lam, p)


def _slack(n: int, F: int, p: int) -> int:
    return 2 * (valuation(n, p) + valuation(F, p)) + 4


def h_p_lambda_neg(n: int, a: int, F: int, lam: LambdaDescriptor, p: int, N: int) -> PadicInt:
    """-(1/n)(lambda^a/F) <a>^n sum_{j<=n} C(n,j) (F/a)^j B_j(lambda^F), modulo p^N."""
    _h_inputs(n, a, F, lam, p)
    W = N + _slack(n, F, p)
    for _ in range(4):
        res = _h_jsum(n, a, F, lam, p, W)
        if res.prec >= N:
            return res.with_prec(N)
        W += N - res.prec + 2
    raise PrecisionLoss(f"could not reach precision {N}")


def _h_jsum(n, a, F, lam, p, W) -> PadicInt:
    row = lb_numbers(lam.pow(F), n)
    Fa = PadicInt.from_rational(Fraction(F, a), p, W)
    acc = PadicInt(p, W, 0)
    Fa_j = PadicInt(p, W, 1)
    for j in range(n + 1):
        b = embed_logpoly(row[j], p, W)
        acc = acc + b * Fa_j * math.comb(n, j)
        Fa_j = Fa_j * Fa
    lam_a = embed_cyclotomic(lam.value**a, p, W)
    front = lam_a * one_unit(a, p, W) ** n * Fraction(-1, n * F)
    return front * acc


def h_p_lambda_neg_closed(n: int, a: int, F: int, lam: LambdaDescriptor, p: int, N: int) -> PadicInt:
    """omega^-n(a) H_lambda(1-n, a|F), computed exactly and then reduced mod p^N."""
    _h_inputs(n, a, F, lam, p)
    w = teichmuller_character(p) ** (-n)
    exact = partial_zeta_neg(lam, n, a, F).scalar() * w(a)
    return _embed_exact(exact, p, N)


def _embed_exact(value, p: int, N: int) -> PadicInt:
    W = N + 2 * abs(valuation_of(value, p)) + 2
    return embed_cyclotomic(value, p, W).with_prec(N)


def _check_character(chi: DirichletCharacter, p: int) -> None:
    if (p - 1) % chi.order:
        raise CharacterNotRepresentable(
            f"character of order {chi.order} does not take values in mu_{p - 1}"
        )


def l_p_lambda_neg(n: int, chi: DirichletCharacter, lam: LambdaDescriptor, p: int, N: int,
                   F: int | None = None) -> PadicInt:
    """sum over 1 <= a <= F, p not dividing a, of chi(a) H_{p,lambda}(1-n, a|F).

    ``chi`` is replaced by the primitive character inducing it; F defaults to lcm(f, p).
    """
    _check_prime(p)
    _check_character(chi, p)
    _check_root_lambda(lam, p)
    chi = chi.primitive()
    F = math.lcm(chi.modulus, p) if F is None else F
    if F % chi.modulus or F % p:
        raise ValueError("F must be a common multiple of the conductor and p")
    W = N + _slack(n, F, p)
    acc = PadicInt(p, W, 0)
    for a in range(1, F + 1):
        if a % p == 0:
            continue
        c = chi(a)
        if c.is_zero():
            continue
        acc = acc + embed_cyclotomic(c, p, W) * h_p_lambda_neg(n, a, F, lam, p, W)
    return acc.with_prec(N)


def l_p_lambda_neg_euler(n: int, chi: DirichletCharacter, lam: LambdaDescriptor, p: int,
                         N: int) -> PadicInt:
    """-(1/n)(B_{n,psi}(lambda) - p^(n-1) psi(p) B_{n,psi}(lambda^p)), psi = (chi omega^-n) primitive."""
    _check_prime(p)
    _check_character(chi, p)
    _check_root_lambda(lam, p)
    psi = (chi.primitive() * teichmuller_character(p) ** (-n)).primitive()
    main = generalized_bernoulli(psi, lam, n).scalar()
    euler = generalized_bernoulli(psi, lam.pow(p), n).scalar() * psi(p) * p ** (n - 1)
    exact = (main - euler) * Fraction(-1, n)
    return _embed_exact(exact, p, N)


def kummer_diagnostic(n1: int, n2: int, chi: DirichletCharacter, lam: LambdaDescriptor, p: int,
                      N: int, a: int | None = None, F: int | None = None) -> dict:
    """Compare interpolated values at 1 - n1 and 1 - n2.

    For n1 = n2 mod (p-1)p^k the classical congruence predicts agreement of the
    L-values mod p^(k+1).  Single partial zeta values (pass ``a`` and ``F``) carry
    a 1/((s-1)F) term and typically miss that level; both are reported, nothing is
    enforced.
    """
    d = n1 - n2
    k = valuation(d // (p - 1), p) if d and d % (p - 1) == 0 else (-1 if d else N)
    out = {"n1": n1, "n2": n2, "congruence_level": k,
           "expected_at_least": k + 1 if k >= 0 else None}
    l1 = l_p_lambda_neg(n1, chi, lam, p, N)
    l2 = l_p_lambda_neg(n2, chi, lam, p, N)
    out["l_valuation"] = (l1 - l2).valuation()
    if a is not None:
        F = math.lcm(chi.modulus, p) if F is None else F
        h1 = h_p_lambda_neg(n1, a, F, lam, p, N)
        h2 = h_p_lambda_neg(n2, a, F, lam, p, N)
        out["h_valuation"] = (h1 - h2).valuation()
    return out
