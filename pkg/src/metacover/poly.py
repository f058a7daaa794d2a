"""Polynomials over Z and Z/qZ, cyclotomic factors and Hensel lifting.

A :class:`ModPoly` stores coefficients low degree first. ``modulus=None``
means integer coefficients. The zero polynomial has an empty coefficient
tuple, so every nonzero polynomial has a nonzero leading coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .errors import DomainError, IntegrityError, LiftError
from .modular import is_prime


def _trim(coeffs: Iterable[int], modulus: int | None) -> tuple[int, ...]:
    c = [x % modulus for x in coeffs] if modulus else [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class ModPoly:
    coeffs: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise DomainError("polynomial modulus must be >= 2")
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.modulus))

    @classmethod
    def x(cls, modulus: int | None = None) -> ModPoly:
        return cls((0, 1), modulus)

    @classmethod
    def const(cls, c: int, modulus: int | None = None) -> ModPoly:
        return cls((c,), modulus)

    @classmethod
    def from_roots(cls, roots: Iterable[int], modulus: int | None = None) -> ModPoly:
        out = cls.const(1, modulus)
        for r in roots:
            out = out * cls((-r, 1), modulus)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def reduce(self, modulus: int) -> ModPoly:
        return ModPoly(self.coeffs, modulus)

    def _coerce(self, other) -> ModPoly:
        if isinstance(other, int):
            return ModPoly((other,), self.modulus)
        if not isinstance(other, ModPoly):
            return NotImplemented
        if other.modulus != self.modulus:
            raise DomainError(f"mixed moduli {self.modulus} and {other.modulus}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return ModPoly(tuple(x + y for x, y in zip(a, b)), self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return ModPoly(tuple(-x for x in self.coeffs), self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return ModPoly((), self.modulus)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ModPoly(tuple(out), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative polynomial power")
        out, base = ModPoly.const(1, self.modulus), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.modulus is None:
            if abs(other.lead) != 1:
                raise DomainError("integer division needs a divisor with leading coefficient +-1")
            inv = other.lead
        else:
            try:
                inv = pow(other.lead, -1, self.modulus)
            except ValueError:
                raise DomainError("leading coefficient of divisor is not a unit") from None
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ModPoly((), self.modulus), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv
            if self.modulus:
                c %= self.modulus
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return ModPoly(tuple(quot), self.modulus), ModPoly(tuple(rem), self.modulus)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
            if self.modulus:
                acc %= self.modulus
        return acc

    def derivative(self) -> ModPoly:
        return ModPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:], self.modulus)

    def monic(self) -> ModPoly:
        if self.is_zero():
            return self
        if self.modulus is None:
            if abs(self.lead) != 1:
                raise DomainError("cannot normalise integer polynomial to monic")
            return self * self.lead
        return self * pow(self.lead, -1, self.modulus)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        text = " + ".join(terms).replace("+ -", "- ")
        return text if self.modulus is None else f"{text} (mod {self.modulus})"


def poly_gcd(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd over the prime field F_p (``a.modulus`` must be prime)."""
    if a.modulus is None or not is_prime(a.modulus):
        raise DomainError("polynomial gcd is only defined here over a prime field")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(f: ModPoly) -> bool:
    """Squarefree test over F_p via gcd(f, f')."""
    df = f.derivative()
    if df.is_zero():
        return f.degree <= 0
    return poly_gcd(f, df).degree == 0


def geometric_poly(n: int, modulus: int | None = None) -> ModPoly:
    """1 + x + ... + x^(n-1)."""
    return ModPoly((1,) * n, modulus)


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    num = ModPoly((-1,) + (0,) * (d - 1) + (1,))
    for k in range(1, d):
        if d % k == 0:
            num, rem = divmod(num, ModPoly(_cyclotomic_coeffs(k)))
            assert rem.is_zero()
    return num.coeffs


def cyclotomic(d: int) -> ModPoly:
    """The d-th cyclotomic polynomial over Z, by exact division of x^d - 1."""
    if d < 1:
        raise DomainError("cyclotomic index must be >= 1")
    return ModPoly(_cyclotomic_coeffs(d))


def sigma_charpoly(g: int, n: int) -> ModPoly:
    """(x - 1)^(2g) * (1 + x + ... + x^(n-1))^(2g-2) over Z."""
    if g < 2 or n < 2:
        raise DomainError("need g >= 2 and n >= 2")
    return ModPoly((-1, 1)) ** (2 * g) * geometric_poly(n) ** (2 * g - 2)


def linear_roots_mod_p(poly: ModPoly, p: int) -> set[int]:
    """All roots of ``poly`` in F_p, by evaluating at every residue."""
    f = poly.reduce(p)
    if f.is_zero():
        raise DomainError(f"polynomial vanishes identically mod {p}")
    return {a for a in range(p) if f(a) == 0}


@dataclass
class HenselTrace:
    """Record of one Newton lift: the root at each precision reached."""

    root: int
    p: int
    e: int
    steps: list[tuple[int, int]] = field(default_factory=list)  # (precision exponent, residue)

    @property
    def lifted(self) -> int:
        return self.steps[-1][1]


def hensel_trace(poly: ModPoly, root: int, p: int, e: int) -> HenselTrace:
    """Lift a simple root mod p to mod p^e, doubling precision each step."""
    if e < 1:
        raise DomainError("exponent must be >= 1")
    f = ModPoly(poly.coeffs)  # integer coefficients
    root %= p
    if f(root) % p:
        raise DomainError(f"{root} is not a root mod {p}")
    df = f.derivative()
    if df(root) % p == 0:
        raise LiftError(f"root {root} mod {p} is not simple; derivative vanishes")
    trace = HenselTrace(root, p, e, [(1, root)])
    a, k = root, 1
    while k < e:
        k = min(2 * k, e)
        q = p**k
        a = (a - f(a) * pow(df(a), -1, q)) % q
        trace.steps.append((k, a))
    return trace


def hensel_lift_root(poly: ModPoly, root: int, p: int, e: int) -> int:
    """The unique residue mod p^e congruent to ``root`` mod p killing ``poly``."""
    return hensel_trace(poly, root, p, e).lifted


def _check_coprime(n: int, p: int):
    if n < 2:
        raise DomainError("n must be >= 2")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if math.gcd(n, p) != 1:
        raise DomainError(f"coprimality required: gcd(n={n}, p={p}) != 1")


def eigenvalue_traces(n: int, p: int, e: int) -> list[HenselTrace]:
    _check_coprime(n, p)
    if e < 1:
        raise DomainError("exponent must be >= 1")
    f = geometric_poly(n)
    return [hensel_trace(f, r, p, e) for r in sorted(linear_roots_mod_p(f, p))]


def eigenvalue_set(n: int, p: int, e: int) -> list[int]:
    """Roots of 1 + x + ... + x^(n-1) in Z/p^eZ, sorted ascending.

    Every root mod p is simple because gcd(n, p) = 1, so each lifts uniquely.
    """
    return sorted(t.lifted for t in eigenvalue_traces(n, p, e))


def linear_factor_count(n: int, p: int) -> int:
    _check_coprime(n, p)
    return math.gcd(n, p - 1) - 1


def split_linear_factors(n: int, p: int, e: int) -> tuple[list[int], ModPoly]:
    """Split off every linear factor of f = 1 + ... + x^(n-1) over Z/p^eZ.

    Returns the lifted roots and the cofactor h with
    f == h * prod(x - root) mod p^e exactly.
    """
    roots = eigenvalue_set(n, p, e)
    q = p**e
    f = geometric_poly(n, q)
    cofactor, rem = divmod(f, ModPoly.from_roots(roots, q))
    if not rem.is_zero():
        raise IntegrityError("lifted roots do not divide f")
    return roots, cofactor


def multiplicative_order(a: int, q: int) -> int:
    if math.gcd(a, q) != 1:
        raise DomainError(f"{a} is not a unit mod {q}")
    k, x = 1, a % q
    while x != 1 % q:
        x = x * a % q
        k += 1
    return k

