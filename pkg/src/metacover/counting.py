"""Closed-form counts of metacyclic étale covers.

Notation: C is a genus-g curve, D -> C a connected cyclic n-cover and E -> D
a cyclic m-cover whose composite E -> C is Galois with group Z/m ⋊ Z/n.

* ``count_T(g, m, n)`` counts the curves E over one fixed D;
* ``count_cyclic(g, n)`` counts the curves D;
* ``count_total(g, m, n)`` is their product.

Everything is exact. The integer routes below clear every negative power of
p before multiplying; the ``*_rational`` helpers evaluate the same formulas
literally with :class:`fractions.Fraction` so integrality can be checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, IntegrityError
from .modular import euler_phi, factorize, is_prime


def _check_genus(g: int):
    if g < 2:
        raise DomainError(f"genus must be >= 2, got {g}")


def _check_args(g: int, m: int, n: int):
    _check_genus(g)
    if m < 2 or n < 2:
        raise DomainError(f"need m >= 2 and n >= 2, got m={m}, n={n}")
    if math.gcd(m, n) != 1:
        raise DomainError(f"m and n must be coprime, but gcd({m}, {n}) = {math.gcd(m, n)}")


def geometric_sum(p: int, terms: int) -> int:
    """1 + p + ... + p^(terms-1)."""
    return sum(p**k for k in range(terms))


@dataclass(frozen=True)
class PrimeBreakdown:
    p: int
    e: int
    lf_count: int   # gcd(n, p-1) - 1, nontrivial roots of unity of order | n in Z/p^e
    pev_count: int  # primitive eigenvectors for those eigenvalues mod p^e


def prime_breakdown(g: int, m: int, n: int) -> list[PrimeBreakdown]:
    _check_args(g, m, n)
    r = 2 * g - 2
    out = []
    for p, e in factorize(m).factors:
        lf = math.gcd(n, p - 1) - 1
        out.append(PrimeBreakdown(p, e, lf, lf * (p ** (e * r) - p ** ((e - 1) * r))))
    return out


def primitive_eigenvector_count(g: int, m: int, n: int) -> int:
    """Primitive eigenvectors of G (x) I_{2g-2} over Z/mZ with no eigenvalue
    component equal to 1 modulo any prime power of m."""
    return math.prod(b.pev_count for b in prime_breakdown(g, m, n))


def count_T(g: int, m: int, n: int) -> int:
    """Number of curves E over a fixed cyclic n-cover D.

    Evaluated as prod over p^e || m of
    (gcd(n, p-1) - 1) * p^((e-1)(2g-3)) * (1 + p + ... + p^(2g-3)).
    """
    _check_args(g, m, n)
    total = 1
    for p, e in factorize(m).factors:
        total *= (math.gcd(n, p - 1) - 1) * p ** ((e - 1) * (2 * g - 3)) * geometric_sum(p, 2 * g - 2)
    pev, phi = primitive_eigenvector_count(g, m, n), euler_phi(m)
    if total * phi != pev:
        raise IntegrityError(f"T * phi(m) = {total * phi} but eigenvector count is {pev}")
    return total


def count_cyclic(g: int, n: int) -> int:
    """Connected cyclic n-covers of a genus-g curve: primitive points of
    (Z/nZ)^(2g) up to units."""
    _check_genus(g)
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    total = 1
    for q, f in factorize(n).factors:
        total *= q ** ((f - 1) * (2 * g - 1)) * geometric_sum(q, 2 * g)
    return total


def count_T_rational(g: int, m: int, n: int) -> Fraction:
    """m^(2g-3) * prod_p (gcd(n,p-1) - 1)(1 + p^-1 + ... + p^-(2g-3)), literally."""
    _check_args(g, m, n)
    value = Fraction(m) ** (2 * g - 3)
    for p in factorize(m).primes:
        value *= (math.gcd(n, p - 1) - 1) * sum(Fraction(1, p**k) for k in range(2 * g - 2))
    return value


def count_T_quotient_rational(g: int, m: int, n: int) -> Fraction:
    """prod_p (gcd(n,p-1)-1) p^(e(2g-2)) (1 - p^-(2g-2)) / (p^e (1 - p^-1))."""
    _check_args(g, m, n)
    value = Fraction(1)
    for p, e in factorize(m).factors:
        num = (math.gcd(n, p - 1) - 1) * Fraction(p) ** (e * (2 * g - 2)) * (1 - Fraction(1, p ** (2 * g - 2)))
        value *= num / (Fraction(p) ** e * (1 - Fraction(1, p)))
    return value


def count_cyclic_rational(g: int, n: int) -> Fraction:
    _check_genus(g)
    value = Fraction(n) ** (2 * g - 1)
    for q in factorize(n).primes:
        value *= sum(Fraction(1, q**k) for k in range(2 * g))
    return value


def count_total_rational(g: int, m: int, n: int) -> Fraction:
    """m^(2g-3) n^(2g-1) times the per-prime factors of m and of n."""
    _check_args(g, m, n)
    value = Fraction(m) ** (2 * g - 3) * Fraction(n) ** (2 * g - 1)
    for p in factorize(m).primes:
        value *= (math.gcd(n, p - 1) - 1) * sum(Fraction(1, p**k) for k in range(2 * g - 2))
    for q in factorize(n).primes:
        value *= sum(Fraction(1, q**k) for k in range(2 * g))
    return value


@dataclass
class CoverCountReport:
    g: int
    m: int
    n: int
    T: int
    N_cyclic: int
    C_total: int
    per_prime: list[PrimeBreakdown] = field(default_factory=list)
    oracle_checked: bool = False
    oracle_value: int | None = None
    oracle_method: str | None = None


def count_total(g: int, m: int, n: int) -> CoverCountReport:
    T = count_T(g, m, n)
    N = count_cyclic(g, n)
    return CoverCountReport(g, m, n, T, N, T * N, prime_breakdown(g, m, n))


def count_special_two_primes(g: int, p: int, q: int) -> int:
    """Total count for group Z/p ⋊ Z/q with p, q distinct primes."""
    _check_genus(g)
    if not (is_prime(p) and is_prime(q)):
        raise DomainError(f"{p} and {q} must both be prime")
    if p == q:
        raise DomainError("p and q must be distinct (gcd(p, q) = 1)")
    if (p - 1) % q:
        return 0
    return (q ** (2 * g) - 1) * geometric_sum(p, 2 * g - 2)
