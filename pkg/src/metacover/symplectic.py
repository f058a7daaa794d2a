"""Symplectic bases of (Z^2g, B) adapted to a surjection Z^2g -> Z/nZ.

Coordinates are ordered x_1..x_g, y_1..y_g and the standard form is
J = [[0, I_g], [-I_g, 0]], so B(x_i, y_j) = delta_ij and every other pairing
of basis vectors vanishes. All arithmetic is on Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError
from .modular import content, xgcd


def _as_int_matrix(M) -> np.ndarray:
    return np.array([[int(x) for x in row] for row in np.asarray(M).tolist()], dtype=object)


def int_det(M) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    A = [[int(x) for x in row] for row in np.asarray(M).tolist()]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def standard_gram(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=object)
    J[:] = 0
    for i in range(g):
        J[i, g + i] = 1
        J[g + i, i] = -1
    return J


@dataclass(frozen=True)
class SkewForm:
    g: int
    gram: np.ndarray

    def __post_init__(self):
        G = _as_int_matrix(self.gram)
        if G.shape != (2 * self.g, 2 * self.g):
            raise DomainError(f"gram matrix must be {2 * self.g}x{2 * self.g}")
        if not np.array_equal(G.T, -G):
            raise DomainError("form is not skew-symmetric")
        if abs(int_det(G)) != 1:
            raise DomainError("form is not unimodular")
        object.__setattr__(self, "gram", G)

    def __call__(self, u, v) -> int:
        return int(np.asarray(u, dtype=object) @ self.gram @ np.asarray(v, dtype=object))


def standard_form(g: int) -> SkewForm:
    if g < 1:
        raise DomainError("genus must be >= 1")
    return SkewForm(g, standard_gram(g))


def is_symplectic(M, g: int | None = None) -> bool:
    """True iff M^T J M = J for the standard form J."""
    M = _as_int_matrix(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError("matrix must be square")
    if M.shape[0] % 2:
        raise DomainError("matrix must have even dimension")
    if g is None:
        g = M.shape[0] // 2
    elif M.shape[0] != 2 * g:
        raise DomainError(f"expected a {2 * g}x{2 * g} matrix")
    J = standard_gram(g)
    return bool(np.array_equal(M.T @ J @ M, J))


def _column_reduce(values: Sequence[int]) -> tuple[int, list[list[int]]]:
    """Unimodular U with values @ U = (c, 0, ..., 0), c = gcd(values) >= 0.

    Leaves columns alone whenever no work is needed, so an already reduced
    input yields the identity.
    """
    k = len(values)
    vals = [int(v) for v in values]
    U = [[int(i == j) for j in range(k)] for i in range(k)]

    def combine(j, a0, aj, b0, bj):
        # new col0 = a0*c0 + aj*cj, new colj = b0*c0 + bj*cj
        for row in U:
            c0, cj = row[0], row[j]
            row[0], row[j] = a0 * c0 + aj * cj, b0 * c0 + bj * cj

    for j in range(1, k):
        a, b = vals[0], vals[j]
        if b == 0:
            continue
        if a == 0:
            combine(j, 0, 1, 1, 0)
            vals[0], vals[j] = b, 0
        elif b % a == 0:
            combine(j, 1, 0, -(b // a), 1)
            vals[j] = 0
        else:
            d, s, t = xgcd(a, b)
            combine(j, s, t, -(b // d), a // d)
            vals[0], vals[j] = d, 0
    if vals and vals[0] < 0:
        for row in U:
            row[0] = -row[0]
        vals[0] = -vals[0]
    return (vals[0] if vals else 0), U


def _lift(delta: Sequence[int], n: int) -> list[int]:
    if n < 2:
        raise DomainError("n must be >= 2")
    lifted = [int(x) % n for x in delta]
    if math.gcd(content(lifted), n) != 1:
        raise DomainError(f"delta {tuple(lifted)} is not surjective onto Z/{n}Z "
                          f"(an epimorphism is required)")
    return lifted


def primitive_with_unit_image(delta: Sequence[int], n: int) -> list[int]:
    """A primitive v in Z^2g whose image under delta is a unit mod n.

    The lift of delta with entries in [0, n) is reduced by unimodular column
    operations; the first column v of the transform satisfies
    lift(v) = gcd of the lifted entries, which is prime to n exactly when
    delta is surjective.
    """
    lifted = _lift(delta, n)
    _, U = _column_reduce(lifted)
    return [row[0] for row in U]


def _pair(B: np.ndarray, u, v) -> int:
    return int(np.asarray(u, dtype=object) @ B @ np.asarray(v, dtype=object))


def _symplectic_reduce(vectors: list[list[int]], B: np.ndarray, dets: list[int]) -> tuple[list, list]:
    """Symplectic basis (xs, ys) of the lattice spanned by ``vectors``.

    The vectors must form a basis on which B is unimodular. The determinant
    of the Gram matrix at every level is appended to ``dets``.
    """
    if not vectors:
        return [], []
    gram = [[_pair(B, u, v) for v in vectors] for u in vectors]
    dets.append(int_det(gram))
    e, rest = vectors[0], vectors[1:]
    c, U = _column_reduce([_pair(B, e, w) for w in rest])
    if c != 1:
        raise DomainError(f"form is not unimodular on the residual lattice (pairing gcd {c})")
    mixed = [[sum(U[i][j] * rest[i][t] for i in range(len(rest))) for t in range(len(e))]
             for j in range(len(rest))]
    f, others = mixed[0], mixed[1:]
    projected = []
    for w in others:
        shift = _pair(B, f, w)
        projected.append([wi + shift * ei for wi, ei in zip(w, e)])
    xs, ys = _symplectic_reduce(projected, B, dets)
    return [e] + xs, [f] + ys


@dataclass
class SymplecticBasisCert:
    g: int
    n: int
    delta: tuple[int, ...]
    basis: list[tuple[int, ...]]          # x_1..x_g, y_1..y_g
    change_of_basis: np.ndarray           # columns are the basis vectors
    delta_values: tuple[int, ...]
    gram: np.ndarray
    residual_dets: list[int] = field(default_factory=list)

    def checks(self) -> dict[str, bool]:
        g, n = self.g, self.n
        P = self.change_of_basis
        J = standard_gram(g)
        return {
            "standard pairing B(x_i, y_j) = delta_ij": bool(np.array_equal(P.T @ self.gram @ P, J)),
            "delta(x_1) generates Z/nZ": math.gcd(self.delta_values[0], n) == 1,
            "delta vanishes on x_2..x_g, y_1..y_g": all(v == 0 for v in self.delta_values[1:]),
            "change of basis is unimodular": abs(int_det(P)) == 1,
            "change of basis is symplectic": is_symplectic(P, g) if np.array_equal(self.gram, J) else True,
            "residual forms unimodular": all(abs(d) == 1 for d in self.residual_dets),
        }

    @property
    def ok(self) -> bool:
        return all(self.checks().values())


def adapt_basis(delta: Sequence[int], g: int, n: int, form: SkewForm | None = None) -> SymplecticBasisCert:
    """Symplectic basis of (Z^2g, B) with delta(x_1) a generator and delta = 0
    on every other basis vector."""
    if g < 2:
        raise DomainError("genus must be >= 2")
    if len(delta) != 2 * g:
        raise DomainError(f"delta must have {2 * g} entries, got {len(delta)}")
    B = (standard_form(g) if form is None else form).gram
    if B.shape != (2 * g, 2 * g):
        raise DomainError("form has the wrong size")
    lifted = _lift(delta, n)

    _, U = _column_reduce(lifted)
    cols = [[U[i][j] for i in range(2 * g)] for j in range(2 * g)]
    v, kernel = cols[0], cols[1:]  # lift(kernel vectors) == 0

    c, U2 = _column_reduce([_pair(B, v, k) for k in kernel])
    if c != 1:
        raise DomainError("form is not unimodular: B(v, .) does not reach 1 on the kernel")
    mixed = [[sum(U2[i][j] * kernel[i][t] for i in range(len(kernel))) for t in range(2 * g)]
             for j in range(len(kernel))]
    y1, rest = mixed[0], mixed[1:]

    dets: list[int] = []
    xs, ys = _symplectic_reduce(rest, B, dets)
    for xj, yj in zip(xs, ys):
        a, b = _pair(B, yj, y1), -_pair(B, xj, y1)
        y1 = [y + a * x + b * yy for y, x, yy in zip(y1, xj, yj)]

    basis = [tuple(v)] + [tuple(x) for x in xs] + [tuple(y1)] + [tuple(y) for y in ys]
    P = np.array([list(col) for col in basis], dtype=object).T
    values = tuple(sum(a * b for a, b in zip(lifted, vec)) % n for vec in basis)
    return SymplecticBasisCert(g, n, tuple(lifted), basis, P, values, B, dets)
