"""Integer matrices attached to the deck transformation and their invariants.

Integer matrices are plain 2-D ``numpy`` int64 arrays. Entries here stay
tiny (permutation and companion matrices), so int64 is exact; anything that
can grow, such as characteristic polynomial coefficients, is computed with
Python integers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .modular import FactoredModulus, as_modulus, is_prime
from .poly import ModPoly, is_squarefree

IntMatrix = np.ndarray


def _square(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {M.shape}")
    return M


def identity(k: int) -> IntMatrix:
    return np.eye(k, dtype=np.int64)


def companion_G(n: int) -> IntMatrix:
    """(n-1)x(n-1) companion matrix of 1 + x + ... + x^(n-1).

    Ones on the subdiagonal and -1 down the last column.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    G = np.zeros((n - 1, n - 1), dtype=np.int64)
    G[np.arange(1, n - 1), np.arange(n - 2)] = 1
    G[:, -1] = -1
    return G


def cyclic_shift(n: int) -> IntMatrix:
    """n x n permutation matrix: identity below the diagonal, 1 in the top-right."""
    P = np.zeros((n, n), dtype=np.int64)
    P[np.arange(1, n), np.arange(n - 1)] = 1
    P[0, n - 1] = 1
    return P


def kron(A, B) -> IntMatrix:
    return np.kron(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64))


def direct_sum(A, B) -> IntMatrix:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.zeros((A.shape[0] + B.shape[0], A.shape[1] + B.shape[1]), dtype=np.int64)
    out[: A.shape[0], : A.shape[1]] = A
    out[A.shape[0]:, A.shape[1]:] = B
    return out


def deck_matrix(g: int, n: int) -> IntMatrix:
    """I_2 (+) (cyclic shift (x) I_{2g-2}), of size 2h with h = n(g-1) + 1."""
    if g < 2 or n < 2:
        raise DomainError("need g >= 2 and n >= 2")
    return direct_sum(identity(2), kron(cyclic_shift(n), identity(2 * g - 2)))


def canonical_form(g: int, n: int) -> IntMatrix:
    """I_{2g} (+) (G (x) I_{2g-2}), the rational canonical shape of the deck matrix."""
    if g < 2 or n < 2:
        raise DomainError("need g >= 2 and n >= 2")
    return direct_sum(identity(2 * g), kron(companion_G(n), identity(2 * g - 2)))


@dataclass(frozen=True)
class ModMatrix:
    """Square matrix over Z/mZ with entries in [0, m)."""

    entries: np.ndarray
    modulus: FactoredModulus

    def __post_init__(self):
        M = _square(self.entries) % self.modulus.m
        M.setflags(write=False)
        object.__setattr__(self, "entries", M)

    @classmethod
    def of(cls, M, m: int | FactoredModulus) -> ModMatrix:
        return cls(np.asarray(M, dtype=np.int64), as_modulus(m))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.modulus.m

    def __matmul__(self, other: ModMatrix) -> ModMatrix:
        return ModMatrix(self.entries @ other.entries % self.m, self.modulus)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModMatrix) and self.m == other.m
                and np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.m, self.entries.tobytes()))


def _berkowitz(rows: list[list[int]], modulus: int | None) -> list[int]:
    """Division-free characteristic polynomial, coefficients high degree first."""

    def red(x):
        return x % modulus if modulus else x

    n = len(rows)
    poly = [1]
    for k in range(1, n + 1):
        a = rows[k - 1][k - 1]
        R = rows[k - 1][: k - 1]
        col = [rows[i][k - 1] for i in range(k - 1)]
        # first column of the Toeplitz factor: 1, -a, -R C, -R A C, -R A^2 C, ...
        t = [1, red(-a)]
        vec = col
        for _ in range(k - 1):
            t.append(red(-sum(r * v for r, v in zip(R, vec))))
            vec = [red(sum(rows[i][j] * vec[j] for j in range(k - 1))) for i in range(k - 1)]
        poly = [red(sum(t[i - j] * poly[j] for j in range(max(0, i - k), min(i, k - 1) + 1)))
                for i in range(k + 1)]
    return poly


def charpoly(M) -> ModPoly:
    """Characteristic polynomial det(xI - M) over Z."""
    M = _square(M)
    high_first = _berkowitz(M.tolist(), None)
    return ModPoly(tuple(reversed(high_first)))


def charpoly_mod(M: ModMatrix) -> ModPoly:
    high_first = _berkowitz(M.entries.tolist(), M.m)
    return ModPoly(tuple(reversed(high_first)), M.m)


def minpoly_mod(M: ModMatrix, p: int | None = None) -> ModPoly:
    """Minimal polynomial over F_p: the first linear dependency among I, M, M^2, ...

    ``p`` defaults to the modulus of ``M``; if given it must divide it.
    """
    p = M.m if p is None else p
    if not is_prime(p) or M.m % p:
        raise DomainError(f"minimal polynomial needs a prime field, got modulus {p}")
    A = M.entries % p
    k = M.dim
    # echelon rows of flattened powers, each carrying its combination of powers
    basis: list[tuple[int, np.ndarray, np.ndarray]] = []
    power = np.eye(k, dtype=np.int64)
    for deg in range(k + 1):
        vec = power.reshape(-1).copy()
        combo = np.zeros(k + 1, dtype=np.int64)
        combo[deg] = 1
        for pivot, bvec, bcombo in basis:
            c = vec[pivot]
            if c:
                vec = (vec - c * bvec) % p
                combo = (combo - c * bcombo) % p
        nz = np.flatnonzero(vec)
        if nz.size == 0:
            return ModPoly(tuple(int(c) for c in combo[: deg + 1]), p).monic()
        pivot = int(nz[0])
        inv = pow(int(vec[pivot]), -1, p)
        basis.append((pivot, vec * inv % p, combo * inv % p))
        power = power @ A % p
    raise AssertionError("no annihilating polynomial within degree bound")


def matrix_order(M: ModMatrix, cap: int = 100_000) -> int:
    """Multiplicative order of ``M`` in GL(Z/mZ)."""
    det = charpoly_mod(M).coeffs[0] if M.dim else 1
    if math.gcd(det, M.m) != 1:
        raise DomainError("matrix is not invertible modulo m")
    ident = np.eye(M.dim, dtype=np.int64)
    power = M.entries.copy()
    for k in range(1, cap + 1):
        if np.array_equal(power, ident):
            return k
        power = power @ M.entries % M.m
    raise DomainError(f"matrix order exceeds search cap {cap}")


def exact_order_over_Z(M, cap: int = 10_000) -> int:
    """Smallest k >= 1 with M^k = I over Z (entries are small for our matrices)."""
    M = _square(M)
    ident = identity(M.shape[0])
    power = M.copy()
    for k in range(1, cap + 1):
        if np.array_equal(power, ident):
            return k
        power = power @ M
    raise DomainError(f"matrix has no finite order below {cap}")


class Verdict(str, enum.Enum):
    SIMILAR = "SIMILAR"
    NOT_SIMILAR = "NOT-SIMILAR"
    NOT_DECIDED = "NOT-DECIDED"


@dataclass
class PrimeCheck:
    p: int
    charpoly_equal: bool
    minpoly_equal: bool
    minpoly_squarefree: bool
    charpolys: tuple[ModPoly, ModPoly]
    minpolys: tuple[ModPoly, ModPoly]


@dataclass
class SimilarityVerdict:
    verdict: Verdict
    modulus: int
    checks: list[PrimeCheck] = field(default_factory=list)
    witness: str = ""


def similarity_verdict(M1, M2, m: int | FactoredModulus) -> SimilarityVerdict:
    """Decide similarity of two integer matrices over Z/mZ.

    For each prime p | m the characteristic and minimal polynomials mod p are
    compared. A mismatch proves non-similarity outright. When everything
    agrees and the shared minimal polynomial is squarefree, both reductions
    are diagonalizable over the algebraic closure with equal multiplicities,
    hence similar over F_p; lifting to Z/mZ then needs both matrices to have
    order prime to m, which is checked and raises DomainError if violated.
    A repeated factor in the minimal polynomial leaves the question open.
    """
    fm = as_modulus(m)
    A, B = _square(M1), _square(M2)
    if A.shape != B.shape:
        return SimilarityVerdict(Verdict.NOT_SIMILAR, fm.m, witness="dimensions differ")
    checks = []
    for p in fm.primes:
        Ap, Bp = ModMatrix.of(A, p), ModMatrix.of(B, p)
        cp = (charpoly_mod(Ap), charpoly_mod(Bp))
        mp = (minpoly_mod(Ap), minpoly_mod(Bp))
        check = PrimeCheck(p, cp[0] == cp[1], mp[0] == mp[1],
                           is_squarefree(mp[0]) and is_squarefree(mp[1]), cp, mp)
        checks.append(check)
        if not check.charpoly_equal:
            return SimilarityVerdict(Verdict.NOT_SIMILAR, fm.m, checks,
                                     f"characteristic polynomials differ mod {p}: {cp[0]} vs {cp[1]}")
        if not check.minpoly_equal:
            return SimilarityVerdict(Verdict.NOT_SIMILAR, fm.m, checks,
                                     f"minimal polynomials differ mod {p}: {mp[0]} vs {mp[1]}")
    for label, M in (("first", A), ("second", B)):
        order = matrix_order(ModMatrix.of(M, fm))
        if math.gcd(order, fm.m) != 1:
            raise DomainError(f"{label} matrix has order {order}, not prime to m={fm.m}")
    for check in checks:
        if not check.minpoly_squarefree:
            return SimilarityVerdict(Verdict.NOT_DECIDED, fm.m, checks,
                                     f"minimal polynomial {check.minpolys[0]} not squarefree mod {check.p}")
    return SimilarityVerdict(Verdict.SIMILAR, fm.m, checks)
