"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

import math
import time
from functools import lru_cache
from itertools import permutations

import numpy as np
import pytest

from metacover.counting import (count_cyclic, count_cyclic_rational, count_special_two_primes, count_T,
                                count_T_quotient_rational, count_T_rational, count_total,
                                count_total_rational, geometric_sum)
from metacover.errors import IntegrityError
from metacover.matrices import ModMatrix, charpoly, deck_matrix, minpoly_mod
from metacover.modular import euler_phi, is_prime
from metacover.oracle import enumerate_deck, kernel_directions
from metacover.poly import ModPoly, eigenvalue_set, geometric_poly, sigma_charpoly, split_linear_factors
from metacover.symplectic import adapt_basis, standard_gram

X = ModPoly.x()


def small_grid():
    for g in (2, 3):
        for m in range(2, 11):
            for n in range(2, 11):
                h = n * (g - 1) + 1
                if math.gcd(m, n) == 1 and m ** (2 * h) <= 10**8:
                    yield g, m, n


def kernel_grid():
    for g in (2, 3, 4):
        for m in range(2, 31):
            for n in range(2, 31):
                if math.gcd(m, n) == 1:
                    yield g, m, n


@lru_cache(maxsize=None)
def kernel_run(g, m, n):
    """Kernel report, or the IntegrityError message if a rank check failed."""
    try:
        return kernel_directions(g, m, n)
    except IntegrityError as exc:
        return str(exc)


@lru_cache(maxsize=None)
def enumeration_run(g, m, n):
    return enumerate_deck(g, m, n)


def criterion_1():
    bad = []
    grid = list(small_grid())
    for g, m, n in grid:
        k = kernel_run(g, m, n)
        values = (count_T(g, m, n), getattr(k, "direction_count", k), enumeration_run(g, m, n).direction_count)
        if len(set(values)) != 1:
            bad.append(((g, m, n), values))
    return not bad, f"{len(grid)} triples, {len(bad)} disagreements {bad[:3]}"


def criterion_2():
    bad = []
    grid = list(kernel_grid())
    for g, m, n in grid:
        k = kernel_run(g, m, n)
        if isinstance(k, str) or k.direction_count != count_T(g, m, n):
            bad.append((g, m, n))
    return not bad, f"{len(grid)} triples, {len(bad)} disagreements {bad[:3]}"


def criterion_3():
    primes = [p for p in range(2, 31) if is_prime(p)]
    bad = []
    for g in (2, 3):
        for p, q in permutations(primes, 2):
            expected = (q ** (2 * g) - 1) * geometric_sum(p, 2 * g - 2) if (p - 1) % q == 0 else 0
            if not (count_total(g, p, q).C_total == count_special_two_primes(g, p, q) == expected):
                bad.append((g, p, q))
    return not bad, f"{2 * len(primes) * (len(primes) - 1)} prime pairs, {len(bad)} failures"


def criterion_4():
    bad, cases = [], 0
    for n in range(2, 21):
        for p in range(2, 51):
            if not is_prime(p) or n % p == 0:
                continue
            for e in (1, 2, 3):
                cases += 1
                q = p**e
                roots, cofactor = split_linear_factors(n, p, e)
                f = geometric_poly(n, q)
                ok = (len(eigenvalue_set(n, p, e)) == math.gcd(n, p - 1) - 1
                      and all(f(r) == 0 for r in roots)
                      and ModPoly.from_roots(roots, q) * cofactor == f)
                if (p - 1) % n == 0:
                    ok = ok and cofactor.degree == 0 and ModPoly.from_roots(roots, q) == f
                if not ok:
                    bad.append((n, p, e))
    return not bad, f"{cases} (n, p, e) cases, {len(bad)} failures {bad[:3]}"


def criterion_5():
    bad, cases = [], 0
    for g in (2, 3):
        for n in range(2, 8):
            M = deck_matrix(g, n)
            if charpoly(M) != (X - 1) ** (2 * g) * geometric_poly(n) ** (2 * g - 2) or \
                    charpoly(M) != sigma_charpoly(g, n):
                bad.append(("charpoly", g, n))
            for p in range(2, 31):
                if is_prime(p) and n % p:
                    cases += 1
                    if minpoly_mod(ModMatrix.of(M, p)) != (X**n - 1).reduce(p):
                        bad.append(("minpoly", g, n, p))
    return not bad, f"12 charpolys, {cases} minpolys, {len(bad)} failures {bad[:3]}"


def criterion_6():
    violations, runs = [], 0
    for g, m, n in list(small_grid()) + list(kernel_grid()):
        runs += 1
        k = kernel_run(g, m, n)
        if isinstance(k, str):
            violations.append(((g, m, n), k))
            continue
        if any(r != 2 * g for r in k.fixed_ranks):
            violations.append(((g, m, n), k.fixed_ranks))
        for rec in k.per_eigenvalue:
            # Each prime component is either the fixed space (2g) or a root-of-unity eigenspace (2g - 2).
            if any(r not in (2 * g, 2 * g - 2) for r in rec.ranks) or \
                    (rec.pure and any(r != 2 * g - 2 for r in rec.ranks)):
                violations.append(((g, m, n), rec))
    return not violations, f"{runs} kernel runs, {len(violations)} rank violations"


def criterion_7():
    rng = np.random.default_rng(20240607)
    done, bad = 0, []
    while done < 500:
        g, n = int(rng.choice([2, 3])), int(rng.integers(2, 10))
        delta = [int(x) for x in rng.integers(0, n, size=2 * g)]
        if math.gcd(math.gcd(*delta), n) != 1:
            continue
        done += 1
        cert = adapt_basis(delta, g, n)
        P = cert.change_of_basis
        J = standard_gram(g)
        if not cert.ok or not np.array_equal(P.T @ J @ P, J):
            bad.append((g, n, delta))
    return not bad, f"{done} certificates, {len(bad)} failures {bad[:3]}"


def criterion_8():
    bad, runs, orbits = [], 0, 0
    for g, m, n in small_grid():
        runs += 1
        rep = enumeration_run(g, m, n)
        orbits += sum(rep.orbit_sizes.values())
        if set(rep.orbit_sizes) - {euler_phi(m)}:
            bad.append(((g, m, n), rep.orbit_sizes))
    return not bad, f"{runs} enumeration runs, {orbits} orbits, {len(bad)} of wrong size"


def criterion_9():
    bad, cases = [], 0
    for g in (2, 3, 4):
        for m in range(2, 51):
            for n in range(2, 51):
                if math.gcd(m, n) != 1:
                    continue
                cases += 1
                values = [count_T_rational(g, m, n), count_T_quotient_rational(g, m, n),
                          count_cyclic_rational(g, n), count_total_rational(g, m, n)]
                ints = [count_T(g, m, n)] * 2 + [count_cyclic(g, n), count_total(g, m, n).C_total]
                if any(v.denominator != 1 for v in values) or values != ints:
                    bad.append((g, m, n))
    return not bad, f"{cases} triples, {len(bad)} non-integral or mismatched"


CRITERIA = [
    (1, "triple agreement grid", criterion_1, 300),
    (2, "kernel vs formula extended grid", criterion_2, 120),
    (3, "two-prime closed form", criterion_3, 1),
    (4, "linear factors and Hensel lifts", criterion_4, 30),
    (5, "deck matrix char and min polys", criterion_5, 30),
    (6, "eigenspace ranks", criterion_6, None),
    (7, "symplectic certificates", criterion_7, 30),
    (8, "orbit sizes equal phi(m)", criterion_8, None),
    (9, "rational evaluation is integral", criterion_9, None),
]


def run_criterion(number, name, fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok, detail = False, f"{detail}; took {elapsed:.2f}s, limit {limit}s"
    line = f"criterion {number} {'PASS' if ok else 'FAIL'} [{name}] {detail} ({elapsed:.2f}s)"
    return ok, line


@pytest.mark.parametrize("number, name, fn, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, name, fn, limit, capsys):
    ok, line = run_criterion(number, name, fn, limit)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
