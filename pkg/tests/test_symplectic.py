import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from metacover.errors import DomainError
from metacover.symplectic import (SkewForm, adapt_basis, int_det, is_symplectic, primitive_with_unit_image,
                                  standard_form, standard_gram)


def surjective_deltas(g_values=(2, 3), n_values=range(2, 10)):
    return st.tuples(st.sampled_from(list(g_values)), st.sampled_from(list(n_values))).flatmap(
        lambda gn: st.tuples(st.just(gn[0]), st.just(gn[1]),
                             st.lists(st.integers(0, gn[1] - 1), min_size=2 * gn[0], max_size=2 * gn[0])
                             .filter(lambda d: math.gcd(math.gcd(*d), gn[1]) == 1)))


def test_int_det_matches_numpy():
    rng = np.random.default_rng(1)
    for _ in range(50):
        M = rng.integers(-5, 6, size=(4, 4))
        assert int_det(M) == round(np.linalg.det(M))


def test_standard_form():
    B = standard_form(2)
    assert B([1, 0, 0, 0], [0, 0, 1, 0]) == 1
    assert B([0, 0, 1, 0], [1, 0, 0, 0]) == -1
    assert B([1, 0, 0, 0], [0, 1, 0, 0]) == 0
    with pytest.raises(DomainError):
        standard_form(0)


def test_skew_form_validation():
    with pytest.raises(DomainError):
        SkewForm(1, [[0, 1], [1, 0]])
    with pytest.raises(DomainError):
        SkewForm(1, [[0, 2], [-2, 0]])


def test_is_symplectic():
    assert is_symplectic(np.eye(4, dtype=int))
    assert is_symplectic([[1, 1], [0, 1]])
    assert not is_symplectic([[2, 0], [0, 1]])
    with pytest.raises(DomainError):
        is_symplectic(np.eye(3, dtype=int))


def test_primitive_with_unit_image_small():
    v = primitive_with_unit_image([2, 3], 6)
    assert math.gcd(*v) == 1
    assert (2 * v[0] + 3 * v[1]) % 6 in {1, 5}


def test_already_adapted_delta_gives_identity():
    cert = adapt_basis([1, 0, 0, 0], 2, 5)
    assert np.array_equal(cert.change_of_basis, np.eye(4, dtype=int))
    assert cert.ok


def test_y_coordinate_generator():
    cert = adapt_basis([0, 0, 1, 0], 2, 3)
    assert cert.ok
    x1 = np.array(cert.basis[0])
    assert abs(x1).tolist() == [0, 0, 1, 0]


def test_all_ones_mod_2():
    cert = adapt_basis([1, 1, 1, 1], 2, 2)
    assert cert.ok


@pytest.mark.parametrize("delta, g, n", [([2, 4, 0, 2], 2, 6), ([0, 0, 0, 0], 2, 3), ([1, 0], 1, 2),
                                         ([1, 0, 0], 2, 3), ([1, 0, 0, 0], 2, 1)])
def test_bad_input(delta, g, n):
    with pytest.raises(DomainError):
        adapt_basis(delta, g, n)


@given(surjective_deltas())
@settings(max_examples=200, deadline=None)
def test_certificates_pass(args):
    g, n, delta = args
    cert = adapt_basis(delta, g, n)
    checks = cert.checks()
    assert all(checks.values()), checks
    P = cert.change_of_basis
    assert np.array_equal(P.T @ standard_gram(g) @ P, standard_gram(g))
    assert cert.delta_values == tuple(int(np.dot(delta, col)) % n for col in P.T)


@given(surjective_deltas(g_values=(2, 3, 4), n_values=(7, 12, 30, 101)))
@settings(max_examples=50, deadline=None)
def test_certificates_larger_n(args):
    g, n, delta = args
    assert adapt_basis(delta, g, n).ok


def test_nonstandard_form():
    # B' = P^T J P for a unimodular P is another unimodular skew form.
    P = np.array([[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -2, 1]])
    gram = P.T @ standard_gram(2).astype(int) @ P
    cert = adapt_basis([3, 1, 4, 1], 2, 5, form=SkewForm(2, gram))
    assert cert.ok
    Q = cert.change_of_basis
    assert np.array_equal(Q.T @ cert.gram @ Q, standard_gram(2))
