"""Exact arithmetic over Z/mZ: factorization, CRT and primitive vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import DomainError


@dataclass(frozen=True)
class FactoredModulus:
    """An integer m >= 2 together with its prime factorization.

    ``factors`` holds ``(p, e)`` pairs sorted by ascending prime.
    """

    m: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.m < 2:
            raise DomainError("modulus must be >= 2")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(e < 1 for _, e in self.factors):
            raise DomainError(f"malformed factorization {self.factors!r}")
        if math.prod(p**e for p, e in self.factors) != self.m:
            raise DomainError(f"factors {self.factors!r} do not multiply to {self.m}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**e for p, e in self.factors)

    def __int__(self) -> int:
        return self.m


def factorize(m: int) -> FactoredModulus:
    """Factor ``m`` by trial division.

    >>> factorize(12).factors
    ((2, 2), (3, 1))
    """
    if m < 2:
        raise DomainError("modulus must be >= 2")
    factors = []
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return FactoredModulus(m, tuple(factors))


def as_modulus(m: int | FactoredModulus) -> FactoredModulus:
    return m if isinstance(m, FactoredModulus) else factorize(m)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).factors == ((n, 1),)


def euler_phi(m: int | FactoredModulus) -> int:
    fm = as_modulus(m)
    return math.prod(p ** (e - 1) * (p - 1) for p, e in fm.factors)


def units(m: int | FactoredModulus) -> list[int]:
    """Residues in [1, m) coprime to m, ascending."""
    m = int(m)
    return [u for u in range(1, m) if math.gcd(u, m) == 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    g, s, _ = xgcd(m1, m2)
    if g != 1:
        raise DomainError(f"moduli {m1} and {m2} are not coprime")
    return (r1 + (r2 - r1) * s % m2 * m1) % (m1 * m2)


def crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Combine residues modulo pairwise coprime moduli."""
    if len(residues) != len(moduli):
        raise DomainError("residue and modulus lists differ in length")
    x, mod = 0, 1
    for r, q in zip(residues, moduli):
        x = crt_pair(x, mod, r % q, q)
        mod *= q
    return x


@dataclass(frozen=True)
class ModVector:
    """A vector over Z/mZ with entries kept in the canonical range [0, m)."""

    modulus: FactoredModulus
    entries: tuple[int, ...]

    def __post_init__(self):
        m = self.modulus.m
        object.__setattr__(self, "entries", tuple(int(x) % m for x in self.entries))

    @classmethod
    def of(cls, entries: Iterable[int], m: int | FactoredModulus) -> ModVector:
        return cls(as_modulus(m), tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)


def content(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)


def is_primitive_vector(v: ModVector) -> bool:
    """True iff ``v`` has additive order exactly m."""
    return math.gcd(content(v.entries), v.modulus.m) == 1


def count_primitive_vectors(N: int, m: int | FactoredModulus) -> int:
    """Number of vectors of additive order m in (Z/mZ)^N."""
    if N < 1:
        raise DomainError("dimension must be >= 1")
    fm = as_modulus(m)
    return math.prod(p ** (e * N) - p ** ((e - 1) * N) for p, e in fm.factors)


def crt_split(v: ModVector) -> list[ModVector]:
    """Reduce ``v`` modulo each prime power of its modulus."""
    out = []
    for p, e in v.modulus.factors:
        q = p**e
        out.append(ModVector(FactoredModulus(q, ((p, e),)), v.entries))
    return out


def crt_join(parts: Sequence[ModVector]) -> ModVector:
    """Inverse of :func:`crt_split`."""
    if not parts:
        raise DomainError("nothing to join")
    dims = {len(part) for part in parts}
    if len(dims) != 1:
        raise DomainError("components have different dimensions")
    factors = []
    for part in parts:
        if len(part.modulus.factors) != 1:
            raise DomainError(f"component modulus {part.modulus.m} is not a prime power")
        factors.append(part.modulus.factors[0])
    factors.sort()
    primes = [p for p, _ in factors]
    if len(set(primes)) != len(primes):
        raise DomainError("components share a prime")
    moduli = [part.modulus.m for part in parts]
    entries = [crt([part.entries[i] for part in parts], moduli) for i in range(dims.pop())]
    m = math.prod(moduli)
    return ModVector(FactoredModulus(m, tuple(factors)), tuple(entries))
