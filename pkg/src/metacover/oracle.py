"""Independent eigen-direction counts for the deck matrix over Z/mZ.

Two oracles, neither of which uses the closed-form counts:

``enumerate_directions``
    Exhaustive search of (Z/mZ)^dim for primitive v with Mv = λv, λ any unit
    other than 1. Orbits under the unit group are formed explicitly.

``kernel_directions``
    Per prime power p^e of m, solves (M - λI)v = 0 by elimination over
    Z/p^eZ for λ = 1 and for every root of 1 + x + ... + x^(n-1), checks the
    solution modules are free of the expected rank, and combines the primes
    by CRT.

Each report carries two counts. ``pure_direction_count`` only admits
eigenvalues that differ from 1 modulo every prime power of m; this is what
the closed form counts. ``all_direction_count`` admits any eigenvalue other
than 1 modulo m. They differ once m has two prime factors and one of them
carries a nontrivial root of unity of order dividing n (e.g. m = 15, n = 2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import counting
from .errors import BudgetError, DomainError, IntegrityError
from .matrices import ModMatrix, deck_matrix
from .modular import FactoredModulus, crt, euler_phi, factorize, units
from .poly import eigenvalue_set

DEFAULT_BUDGET = 10**8
ENUMERATE = "ENUMERATE"
KERNEL = "KERNEL"


@dataclass(frozen=True)
class EigenRecord:
    eigenvalue: int
    primitive_count: int
    ranks: tuple[int | None, ...]  # free rank of the eigenspace mod each p^e
    pure: bool                     # eigenvalue != 1 modulo every p^e


@dataclass
class EigenReport:
    m: int
    method: str
    per_eigenvalue: list[EigenRecord]
    all_direction_count: int
    pure_direction_count: int
    g: int | None = None
    n: int | None = None
    fixed_ranks: tuple[int, ...] = ()
    representatives: list[tuple[int, ...]] = field(default_factory=list)
    orbit_sizes: dict[int, int] = field(default_factory=dict)  # orbit size -> number of orbits

    @property
    def direction_count(self) -> int:
        """Enumeration counts every eigenvalue other than 1; the kernel route
        only the eigenvalues built from per-prime roots of unity."""
        return self.all_direction_count if self.method == ENUMERATE else self.pure_direction_count

    @property
    def eigenvalues(self) -> list[int]:
        return [r.eigenvalue for r in self.per_eigenvalue]


def _primitive_mask(V: np.ndarray, fm: FactoredModulus) -> np.ndarray:
    mask = np.ones(V.shape[0], dtype=bool)
    for p in fm.primes:
        mask &= np.any(V % p != 0, axis=1)
    return mask


def _all_vectors(m: int, k: int) -> np.ndarray:
    """Every vector of (Z/mZ)^k, in lexicographic order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((m,) * k, dtype=np.int64).reshape(k, -1)
    return grids.T.copy()


def _keys(V: np.ndarray, m: int) -> np.ndarray:
    weights = m ** np.arange(V.shape[1] - 1, -1, -1, dtype=np.int64)
    return V @ weights


def _solve_split(D: np.ndarray, m: int) -> np.ndarray:
    """All v in (Z/mZ)^d with D v = 0 mod m.

    The coordinates are split into a high block H and a low block L, so
    D v = D_H h + D_L l. For every l the residual D_L l is encoded as an
    integer key and sorted; each h then picks out exactly the l whose key
    matches -D_H h. Every vector of the space is accounted for.
    """
    d = D.shape[1]
    k = (d + 1) // 2
    low = _all_vectors(m, k)
    high = _all_vectors(m, d - k)
    low_res = low @ D[:, d - k:].T % m
    high_res = (-(high @ D[:, : d - k].T)) % m
    low_keys = _keys(low_res, m)
    order = np.argsort(low_keys, kind="stable")
    sorted_keys = low_keys[order]
    high_keys = _keys(high_res, m)
    start = np.searchsorted(sorted_keys, high_keys, side="left")
    stop = np.searchsorted(sorted_keys, high_keys, side="right")
    hits = np.flatnonzero(stop > start)
    rows = []
    for i in hits:
        lows = low[np.sort(order[start[i]:stop[i]])]
        rows.append(np.hstack([np.broadcast_to(high[i], (lows.shape[0], d - k)), lows]))
    if not rows:
        return np.zeros((0, d), dtype=np.int64)
    return np.vstack(rows)


def _solve_scan(D: np.ndarray, m: int, chunk: int = 1 << 18) -> np.ndarray:
    """Literal scan: test D v = 0 for every v, in lexicographic chunks."""
    d = D.shape[1]
    weights = m ** np.arange(d - 1, -1, -1, dtype=np.int64)
    found = []
    total = m**d
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        V = (idx[:, None] // weights) % m
        hit = np.all(V @ D.T % m == 0, axis=1)
        if hit.any():
            found.append(V[hit])
    if not found:
        return np.zeros((0, d), dtype=np.int64)
    return np.vstack(found)


def _infer_rank(count: int, p: int, e: int, dim: int) -> int | None:
    """Rank r with count == p^(er) - p^((e-1)r), if there is one."""
    for r in range(dim + 1):
        if p ** (e * r) - p ** ((e - 1) * r) == count:
            return r
    return None


def _orbit_data(S: np.ndarray, m: int, unit_list: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Lexicographically least orbit member and orbit size for each row of S."""
    images = np.stack([(u * S) % m for u in unit_list])  # (units, rows, d)
    keys = np.stack([_keys(img, m) for img in images])   # (units, rows)
    rep_idx = np.argmin(keys, axis=0)
    reps = images[rep_idx, np.arange(S.shape[0])]
    sorted_keys = np.sort(keys, axis=0)
    sizes = 1 + np.count_nonzero(np.diff(sorted_keys, axis=0), axis=0)
    return reps, sizes


def enumerate_directions(M: ModMatrix, budget: int = DEFAULT_BUDGET, *, strategy: str = "split",
                         g: int | None = None, n: int | None = None) -> EigenReport:
    """Count primitive eigen-directions of ``M`` by exhaustive search.

    ``strategy="split"`` solves each eigen-equation with a sorted-key join
    over two halves of the coordinates; ``strategy="scan"`` tests every vector
    one chunk at a time. Both cover the full space m^dim, which must not
    exceed ``budget``.
    """
    fm, m, d = M.modulus, M.m, M.dim
    size = m**d
    if size > budget or size >= 2**62:
        raise BudgetError(f"exhaustive search needs m^dim = {m}^{d} = {size} candidates, "
                          f"over budget {budget}; use kernel_directions instead")
    if strategy not in ("split", "scan"):
        raise DomainError(f"unknown enumeration strategy {strategy!r}")
    solve = _solve_split if strategy == "split" else _solve_scan
    unit_list = units(m)
    phi = len(unit_list)
    ident = np.eye(d, dtype=np.int64)
    records, reps_all = [], []
    orbit_sizes: dict[int, int] = {}
    for lam in unit_list:
        if lam == 1:
            continue
        S = solve((M.entries - lam * ident) % m, m)
        S = S[_primitive_mask(S, fm)]
        if S.shape[0] == 0:
            continue
        reps, sizes = _orbit_data(S, m, unit_list)
        rep_keys = _keys(reps, m)
        _, first = np.unique(rep_keys, return_index=True)
        for s in sizes[first]:
            orbit_sizes[int(s)] = orbit_sizes.get(int(s), 0) + 1
        reps_all.extend(tuple(int(x) for x in reps[i]) for i in first)
        ranks = tuple(_infer_rank(len({tuple(r) for r in (S % (p**e)).tolist()}), p, e, d)
                      for p, e in fm.factors)
        pure = all((lam - 1) % (p**e) for p, e in fm.factors)
        records.append(EigenRecord(lam, int(S.shape[0]), ranks, pure))
    total = sum(r.primitive_count for r in records)
    pure_total = sum(r.primitive_count for r in records if r.pure)
    if total % phi or pure_total % phi:
        raise IntegrityError("primitive eigenvector count is not a multiple of phi(m)")
    return EigenReport(m, ENUMERATE, records, total // phi, pure_total // phi, g=g, n=n,
                       representatives=sorted(reps_all), orbit_sizes=orbit_sizes)


def enumerate_deck(g: int, m: int, n: int, budget: int = DEFAULT_BUDGET, **kw) -> EigenReport:
    return enumerate_directions(ModMatrix.of(deck_matrix(g, n), m), budget, g=g, n=n, **kw)


def kernel_basis_mod_prime_power(A, p: int, e: int) -> np.ndarray:
    """Basis (as rows) of the solutions of A v = 0 over Z/p^eZ.

    Pivots only on unit entries. Raises IntegrityError when the solution
    module is not free, i.e. when rows without a unit pivot still hold
    nonzero entries after elimination.
    """
    q = p**e
    if q >= 3 * 10**9:
        raise DomainError(f"modulus {p}^{e} too large for int64 elimination")
    A = np.asarray(A, dtype=np.int64) % q
    nrows, ncols = A.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        cand = np.flatnonzero(A[row:, col] % p)
        if cand.size == 0:
            continue
        r = row + int(cand[0])
        if r != row:
            A[[row, r]] = A[[r, row]]
        A[row] = A[row] * pow(int(A[row, col]), -1, q) % q
        factors = A[:, col].copy()
        factors[row] = 0
        A = (A - np.outer(factors, A[row])) % q
        pivots.append(col)
        row += 1
    if np.any(A[row:]):
        bad = np.argwhere(A[row:])[0]
        raise IntegrityError(f"solution module mod {p}^{e} is not free: residual entry "
                             f"{int(A[row + bad[0], bad[1]])} without a unit pivot in column {int(bad[1])}")
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, c in enumerate(pivots):
            basis[i, c] = -A[j, f] % q
    return basis


def kernel_directions(g: int, m: int, n: int, matrix=None) -> EigenReport:
    """Count eigen-directions of the deck matrix mod m by per-prime elimination.

    Eigenspaces must be free: rank 2g - 2 for every nontrivial root of unity
    and rank 2g for λ = 1, otherwise IntegrityError. ``matrix`` overrides the
    deck matrix (used to exercise the failure paths).
    """
    if math.gcd(m, n) != 1:
        raise DomainError(f"m and n must be coprime, but gcd({m}, {n}) = {math.gcd(m, n)}")
    M = deck_matrix(g, n) if matrix is None else np.asarray(matrix, dtype=np.int64)
    fm = factorize(m)
    d = M.shape[0]
    ident = np.eye(d, dtype=np.int64)
    per_prime = []  # per prime: list of (residue mod p^e, primitive count, rank)
    fixed_ranks = []
    for p, e in fm.factors:
        q = p**e
        options = []
        for lam in [1] + eigenvalue_set(n, p, e):
            basis = kernel_basis_mod_prime_power(M - lam * ident, p, e)
            if np.any((basis @ (M - lam * ident).T) % q):
                raise IntegrityError(f"kernel basis for eigenvalue {lam} mod {q} fails the eigen-equation")
            rank = basis.shape[0]
            expected = 2 * g if lam == 1 else 2 * g - 2
            if rank != expected:
                raise IntegrityError(f"eigenspace for {lam} mod {p}^{e} has rank {rank}, expected {expected}")
            if lam == 1:
                fixed_ranks.append(rank)
            options.append((lam, p ** (e * rank) - p ** ((e - 1) * rank), rank))
        per_prime.append(options)
    records = []
    moduli = list(fm.prime_powers)
    for combo in itertools.product(*per_prime):
        if all(lam == 1 for lam, _, _ in combo):
            continue
        lam = crt([c[0] for c in combo], moduli)
        records.append(EigenRecord(lam, math.prod(c[1] for c in combo),
                                   tuple(c[2] for c in combo), all(c[0] != 1 for c in combo)))
    records.sort(key=lambda r: r.eigenvalue)
    phi = euler_phi(fm)
    total = sum(r.primitive_count for r in records)
    pure_total = sum(r.primitive_count for r in records if r.pure)
    if total % phi or pure_total % phi:
        raise IntegrityError("primitive eigenvector count is not a multiple of phi(m)")
    return EigenReport(m, KERNEL, records, total // phi, pure_total // phi, g=g, n=n,
                       fixed_ranks=tuple(fixed_ranks))


@dataclass
class VerifyResult:
    g: int
    m: int
    n: int
    match: bool
    formula: int
    kernel: EigenReport
    enumeration: EigenReport | None = None
    skipped_reason: str = ""

    @property
    def value(self) -> int | None:
        return self.formula if self.match else None

    @property
    def method(self) -> str:
        return "formula+kernel+enumeration" if self.enumeration else "kernel-verified"

    @property
    def values(self) -> dict[str, int]:
        out = {"formula": self.formula, "kernel": self.kernel.direction_count}
        if self.enumeration is not None:
            out["enumeration"] = self.enumeration.direction_count
        return out

    def explain(self) -> str:
        """Why the counts differ, when the difference is the impure-eigenvalue gap."""
        if self.match:
            return ""
        e = self.enumeration
        if (e is not None and e.pure_direction_count == self.formula
                and e.all_direction_count == self.kernel.all_direction_count):
            return (f"{e.all_direction_count - e.pure_direction_count} eigen-directions have an "
                    f"eigenvalue congruent to 1 modulo some but not all prime powers of m; "
                    f"the closed form omits them")
        return ""


def verify(g: int, m: int, n: int, budget: int = DEFAULT_BUDGET, *,
           kernel_matrix=None, enum_matrix=None) -> VerifyResult:
    """Compare the closed form with the kernel oracle and, within budget,
    exhaustive enumeration.

    ``kernel_matrix`` and ``enum_matrix`` swap in another integer matrix for
    one oracle only; they exist so the mismatch and integrity paths can be
    exercised.
    """
    formula = counting.count_T(g, m, n)
    kernel = kernel_directions(g, m, n, matrix=kernel_matrix)
    M = deck_matrix(g, n) if enum_matrix is None else enum_matrix
    enumeration, reason = None, ""
    try:
        enumeration = enumerate_directions(ModMatrix.of(M, m), budget, g=g, n=n)
    except BudgetError as exc:
        reason = str(exc)
    values = [formula, kernel.direction_count]
    if enumeration is not None:
        values.append(enumeration.direction_count)
    return VerifyResult(g, m, n, len(set(values)) == 1, formula, kernel, enumeration, reason)
