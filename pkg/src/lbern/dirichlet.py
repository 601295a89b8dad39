"""Dirichlet characters as explicit value tables, and generalized lambda-Bernoulli numbers."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .exact_scalar import CyclotomicElement, LambdaDescriptor, LogPolynomial, euler_phi
from .lambda_bernoulli import lb_numbers
from .series_oracle import Generalized, expand_gf

__all__ = [
    "DirichletCharacter",
    "ConductorMismatch",
    "characters_mod",
    "character",
    "conductor",
    "primitive_root",
    "factorize",
    "generalized_bernoulli",
    "generalized_bernoulli_series",
    "MAX_MODULUS",
]

MAX_MODULUS = 10000


class ConductorMismatch(ValueError):
    pass


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out.append((q, e))
        q += 1
    if n > 1:
        out.append((n, 1))
    return out


def _mult_order(a: int, n: int) -> int:
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


@lru_cache(maxsize=None)
def primitive_root(n: int) -> int:
    """Least generator of (Z/n)^*, for n with cyclic unit group."""
    if n <= 2:
        return 1
    phi = euler_phi(n)
    for g in range(2, n):
        if math.gcd(g, n) == 1 and _mult_order(g, n) == phi:
            return g
    raise ValueError(f"(Z/{n})^* is not cyclic")


class DirichletCharacter:
    """chi(a) = zeta_e^{exps[a]} on units, 0 elsewhere; e is the exact order of chi."""

    __slots__ = ("modulus", "order", "exps", "index", "_values", "_conductor")

    def __init__(self, modulus: int, exps, e: int, index: int | None = None):
        exps = tuple(None if j is None else j % e for j in exps)
        if len(exps) != modulus:
            raise ValueError("value table length must equal the modulus")
        g = e
        for j in exps:
            if j is not None:
                g = math.gcd(g, j)
        order = e // g
        self.modulus = modulus
        self.order = order
        self.exps = tuple(None if j is None else (j // g) % order for j in exps)
        self.index = index
        zero = CyclotomicElement(order)
        self._values = tuple(
            zero if j is None else CyclotomicElement.zeta(order, j) for j in self.exps
        )
        self._conductor = None

    def __call__(self, a: int) -> CyclotomicElement:
        return self._values[a % self.modulus]

    @property
    def values(self) -> tuple[CyclotomicElement, ...]:
        return self._values

    def exponent(self, a: int) -> int | None:
        return self.exps[a % self.modulus]

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def conductor(self) -> int:
        if self._conductor is None:
            self._conductor = conductor(self)
        return self._conductor

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus, self.order, self.exps) == (other.modulus, other.order, other.exps)

    def __hash__(self):
        return hash((self.modulus, self.order, self.exps))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        M = math.lcm(self.modulus, other.modulus)
        E = math.lcm(self.order, other.order)
        s1, s2 = E // self.order, E // other.order
        exps = []
        for a in range(M):
            if math.gcd(a, M) != 1:
                exps.append(None)
            else:
                exps.append(self.exponent(a) * s1 + other.exponent(a) * s2)
        return DirichletCharacter(M, exps, E)

    def __pow__(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(
            self.modulus, [None if j is None else j * k for j in self.exps], self.order
        )

    def conj(self) -> "DirichletCharacter":
        return self ** (-1)

    def lift(self, F: int) -> "DirichletCharacter":
        """The induced character modulo a multiple F of the modulus."""
        if F % self.modulus:
            raise ConductorMismatch(f"{F} is not a multiple of {self.modulus}")
        exps = [None if math.gcd(a, F) != 1 else self.exponent(a) for a in range(F)]
        return DirichletCharacter(F, exps, self.order)

    def primitive(self) -> "DirichletCharacter":
        """The primitive character modulo the conductor inducing this one."""
        g = self.conductor
        if g == self.modulus:
            return self
        exps: list[int | None] = [None] * g
        for a in range(self.modulus):
            j = self.exps[a]
            if j is not None and exps[a % g] is None:
                exps[a % g] = j
        return DirichletCharacter(g, exps, self.order)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "index": self.index,
            "order": self.order,
            "conductor": self.conductor,
            "primitive": self.is_primitive,
            "values": [v.to_json() for v in self._values],
        }

    def __repr__(self):
        tag = f" #{self.index}" if self.index is not None else ""
        return f"DirichletCharacter(mod {self.modulus}{tag}, order {self.order})"


def _unit_generators(f: int) -> list[tuple[int, int]]:
    """Generators of (Z/f)^* lifted by CRT, with their orders."""
    gens = []
    for p, k in factorize(f):
        q = p**k
        if p == 2:
            local = [] if k == 1 else [(3, 2)] if k == 2 else [(q - 1, 2), (5, q // 4)]
        else:
            local = [(primitive_root(q), euler_phi(q))]
        rest = f // q
        for g, o in local:
            if rest == 1:
                gens.append((g % f, o))
                continue
            # x = g mod q, x = 1 mod rest
            x = (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % f
            gens.append((x, o))
    return gens


@lru_cache(maxsize=256)
def characters_mod(f: int, bound: int = MAX_MODULUS) -> tuple[DirichletCharacter, ...]:
    """All phi(f) characters mod f, ordered lexicographically on generator exponents."""
    if f < 1:
        raise ValueError("modulus must be positive")
    if f > bound:
        raise ValueError(f"modulus {f} exceeds the configured bound {bound}")
    gens = _unit_generators(f)
    orders = [o for _, o in gens]
    M = math.lcm(*orders) if orders else 1
    dlog: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(o) for o in orders)):
        x = 1
        for (g, _), c in zip(gens, exps):
            x = x * pow(g, c, f) % f
        dlog[x % f] = exps
    chars = []
    for idx, ex in enumerate(itertools.product(*(range(o) for o in orders))):
        table = []
        for a in range(f):
            c = dlog.get(a)
            if c is None:
                table.append(None)
            else:
                table.append(sum(ei * ci * (M // o) for ei, ci, o in zip(ex, c, orders)))
        chars.append(DirichletCharacter(f, table, M, index=idx))
    return tuple(chars)


def character(f: int, index: int) -> DirichletCharacter:
    chars = characters_mod(f)
    if not 0 <= index < len(chars):
        raise IndexError(f"character index {index} out of range for modulus {f}")
    return chars[index]


def conductor(chi: DirichletCharacter) -> int:
    f = chi.modulus
    for g in sorted(d for d in range(1, f + 1) if f % d == 0):
        if all(
            chi.exps[a] == 0
            for a in range(1, f, g) if chi.exps[a] is not None
        ):
            return g
    return f


def generalized_bernoulli(
    chi: DirichletCharacter, lam: LambdaDescriptor, n: int, F: int | None = None
) -> LogPolynomial:
    """B_{n,chi}(lambda) = F^(n-1) sum_{a=1}^{F} chi(a) lambda^a B_n(lambda^F; a/F)."""
    F = chi.modulus if F is None else F
    if F < 1 or F % chi.modulus:
        raise ConductorMismatch(f"F = {F} is not a multiple of the modulus {chi.modulus}")
    row = lb_numbers(lam.pow(F), n)
    v = lam.value
    acc = LogPolynomial()
    for a in range(1, F + 1):
        c = chi(a)
        if c.is_zero():
            continue
        y = Fraction(a, F)
        bn = LogPolynomial()
        yp = Fraction(1)
        for k in range(n, -1, -1):
            if not row[k].is_zero():
                bn = bn + row[k] * (math.comb(n, k) * yp)
            yp *= y
        acc = acc + bn * (c * v**a)
    return acc * Fraction(F) ** (n - 1)


def generalized_bernoulli_series(
    chi: DirichletCharacter, lam: LambdaDescriptor, n: int, F: int | None = None
) -> LogPolynomial:
    """Same quantity read off the expanded character generating function."""
    return expand_gf(Generalized(chi, lam, F), n)[n]
