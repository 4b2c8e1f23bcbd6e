import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from stackgsv.config import get_tolerances
from stackgsv.errors import InvalidInput, NotPositiveDefinite
from stackgsv.linalg import (EPS, as_matrix, cholesky, hermitian_definite_eig,
                             inverse_sqrt_hermitian, random_unitary, scalar_kind,
                             singular_values_only, svd)

from conftest import random_matrix


def _svd_checks(m, res, tol):
    rows, cols = m.shape
    smax = res.singular_values[0] if len(res.singular_values) else 0.0
    bound = tol.svd_factor * EPS * max(rows, cols) * max(smax, 1e-300)
    assert np.linalg.norm(res.reconstruct() - m) <= bound
    for q in (res.left, res.right):
        k = q.shape[0]
        assert np.linalg.norm(q.conj().T @ q - np.eye(k)) <= tol.svd_factor * EPS * k
    s = res.singular_values
    assert np.all(s >= 0) and np.all(np.diff(s) <= 0)


@pytest.mark.parametrize("m, expected", [
    (np.eye(3), [1, 1, 1]),
    (np.diag([3.0, 2.0]), [3, 2]),
    (np.array([[0.0, 1.0], [1.0, 0.0], [0.0, 0.0]]), [1, 1]),
])
def test_svd_trivial(m, expected, tol):
    res = svd(m)
    np.testing.assert_allclose(res.singular_values, expected, atol=1e-15)
    _svd_checks(m, res, tol)


@pytest.mark.parametrize("shape", [(1, 1), (4, 3), (3, 4), (7, 7), (12, 2)])
@pytest.mark.parametrize("cplx", [False, True])
def test_svd_random(shape, cplx, rng, tol):
    m = random_matrix(rng, *shape, cplx)
    res = svd(m)
    assert res.left.shape == (shape[0], shape[0])
    assert res.right.shape == (shape[1], shape[1])
    _svd_checks(m, res, tol)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 6), st.integers(1, 6)),
              elements=st.floats(-1e3, 1e3)))
def test_svd_reconstruction_property(m):
    _svd_checks(m, svd(m), get_tolerances())


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_svd_rejects_nonfinite(bad):
    m = np.eye(2)
    m[0, 1] = bad
    with pytest.raises(InvalidInput):
        svd(m)
    with pytest.raises(InvalidInput):
        singular_values_only(m)


def test_as_matrix_rejects_empty():
    with pytest.raises(InvalidInput):
        as_matrix(np.zeros((0, 3)))


def test_scalar_kind():
    assert scalar_kind(as_matrix([[1.0]])) == "real"
    assert scalar_kind(as_matrix([[1j]])) == "complex"


def test_singular_values_only_trivial():
    np.testing.assert_array_equal(singular_values_only([[1.0, 0.0]]), [1.0])
    np.testing.assert_array_equal(singular_values_only([[2.0, 0.0], [0.0, 1.0]]), [2.0, 1.0])


@pytest.mark.parametrize("cplx", [False, True])
def test_singular_values_only_matches_svd(cplx, rng, tol):
    m = random_matrix(rng, 4, 3, cplx)
    s_full = svd(m).singular_values
    s = singular_values_only(m)
    assert np.max(np.abs(s - s_full)) <= tol.values_only_match * s_full[0]


def test_cholesky_trivial():
    np.testing.assert_array_equal(cholesky(np.eye(2)), np.eye(2))
    np.testing.assert_array_equal(cholesky(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))


@pytest.mark.parametrize("cplx", [False, True])
def test_cholesky_random(cplx, rng, tol):
    m = random_matrix(rng, 6, 5, cplx)
    s = m.conj().T @ m + np.eye(5)
    low = cholesky(s)
    assert np.allclose(low, np.tril(low))
    assert np.all(np.real(np.diag(low)) > 0)
    assert np.linalg.norm(low @ low.conj().T - s) <= tol.cholesky_reconstruction * np.linalg.norm(s)


@pytest.mark.parametrize("s", [
    np.diag([1.0, -1.0]),
    np.zeros((2, 2)),
    np.array([[1.0, 2.0], [2.0, 1.0]]),
])
def test_cholesky_rejects_indefinite(s):
    with pytest.raises(NotPositiveDefinite):
        cholesky(s)


def test_not_positive_definite_is_linalg_error():
    with pytest.raises(np.linalg.LinAlgError):
        cholesky(-np.eye(3))


def test_definite_eig_trivial():
    w, _ = hermitian_definite_eig(np.diag([4.0, 1.0]), np.diag([5.0, 2.0]))
    np.testing.assert_allclose(w, [0.8, 0.5], rtol=1e-15)
    w, _ = hermitian_definite_eig(np.eye(2), np.eye(2))
    np.testing.assert_allclose(w, [1.0, 1.0], rtol=1e-15)


@pytest.mark.parametrize("cplx", [False, True])
def test_definite_eig_residual(cplx, rng, tol):
    n = 6
    m = random_matrix(rng, 4, n, cplx)
    g = m.conj().T @ m
    s = g + np.eye(n)
    w, v = hermitian_definite_eig(g, s)
    assert np.all(np.diff(w) <= 0)
    bound = tol.eig_residual * EPS * n * (np.linalg.norm(g) + np.linalg.norm(s))
    for lam, x in zip(w, v.T):
        assert np.linalg.norm(g @ x - lam * (s @ x)) <= bound
    # (G, G + H) with H PSD has its spectrum in [0, 1]
    assert w.min() >= -tol.eig_range_slack and w.max() <= 1 + tol.eig_range_slack
    # S-orthonormal eigenvectors
    np.testing.assert_allclose(v.conj().T @ s @ v, np.eye(n), atol=1e-12)


def test_definite_eig_needs_definite_s():
    with pytest.raises(NotPositiveDefinite):
        hermitian_definite_eig(np.eye(2), np.diag([1.0, 0.0]))


def test_inverse_sqrt(rng):
    m = random_matrix(rng, 5, 3)
    s = m.T @ m
    r = inverse_sqrt_hermitian(s)
    np.testing.assert_allclose(r @ s @ r, np.eye(3), atol=1e-12)


@pytest.mark.parametrize("cplx", [False, True])
def test_random_unitary(cplx, rng, tol):
    q = random_unitary(5, rng, cplx)
    assert np.linalg.norm(q.conj().T @ q - np.eye(5)) <= tol.svd_factor * EPS * 5
    assert np.iscomplexobj(q) == cplx
