"""Dense matrix helpers and the numerical primitives used by the rest of the package.

Matrices are plain 2-D numpy arrays of dtype float64 (real kind) or
complex128 (complex kind).  The factorizations delegate to LAPACK through
numpy/scipy; what this module adds is input validation, ordering
conventions, and the error types callers rely on.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import InvalidInput, NotPositiveDefinite, ShapeMismatch

EPS = np.finfo(np.float64).eps


def as_matrix(x, name="matrix"):
    """Coerce ``x`` to a finite, nonempty 2-D float64 or complex128 array."""
    arr = np.asarray(x)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise InvalidInput(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.size == 0:
        raise InvalidInput(f"{name} is empty")
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128, copy=False)
    else:
        try:
            arr = arr.astype(np.float64, copy=False)
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"{name} is not numeric") from exc
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains NaN or Inf")
    return arr


def scalar_kind(m):
    return "complex" if np.iscomplexobj(m) else "real"


class SvdResult(NamedTuple):
    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray

    def reconstruct(self):
        rows, cols = self.left.shape[0], self.right.shape[0]
        k = len(self.singular_values)
        sigma = np.zeros((rows, cols))
        sigma[:k, :k] = np.diag(self.singular_values)
        return self.left @ sigma @ self.right.conj().T


def svd(m):
    """Full SVD ``M = left @ diag_rect(s) @ right^H`` with square unitary factors."""
    m = as_matrix(m)
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    return SvdResult(u, s, vh.conj().T)


def singular_values_only(m):
    m = as_matrix(m)
    return np.linalg.svd(m, compute_uv=False)


def _require_square(m, name):
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got {m.shape}")


def cholesky(s):
    """Lower-triangular ``L`` with positive diagonal and ``L @ L^H == s``.

    Raises NotPositiveDefinite when the factorization breaks down.
    """
    s = as_matrix(s, "S")
    _require_square(s, "S")
    try:
        low = np.linalg.cholesky(s)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"matrix is not positive definite: {exc}") from None
    d = np.real(np.diag(low))
    if not np.all(np.isfinite(low)) or np.any(d <= 0):
        raise NotPositiveDefinite("matrix is numerically singular")
    return low


def hermitian_definite_eig(g, s):
    """Solve ``g v = lam s v`` for Hermitian ``g`` and Hermitian positive definite ``s``.

    Uses the Cholesky reduction ``C = L^{-1} g L^{-H}``.  Returns
    ``(eigenvalues, vectors)`` with eigenvalues non-increasing and vectors
    normalized so that ``v^H s v = 1``.
    """
    g = as_matrix(g, "G")
    s = as_matrix(s, "S")
    _require_square(g, "G")
    _require_square(s, "S")
    if g.shape != s.shape:
        raise ShapeMismatch(f"G is {g.shape} but S is {s.shape}")
    low = cholesky(s)
    tmp = scipy.linalg.solve_triangular(low, g, lower=True)
    c = scipy.linalg.solve_triangular(low, tmp.conj().T, lower=True).conj().T
    c = 0.5 * (c + c.conj().T)
    w, y = np.linalg.eigh(c)
    vecs = scipy.linalg.solve_triangular(low, y, lower=True, trans="C")
    return w[::-1].copy(), vecs[:, ::-1].copy()


def inverse_sqrt_hermitian(s):
    """Hermitian inverse square root from the eigendecomposition of ``s``."""
    s = as_matrix(s, "S")
    _require_square(s, "S")
    cholesky(s)  # positive-definiteness gate
    w, q = np.linalg.eigh(0.5 * (s + s.conj().T))
    if np.any(w <= 0):
        raise NotPositiveDefinite("non-positive eigenvalue in S")
    return (q / np.sqrt(w)) @ q.conj().T


def random_unitary(n, rng, complex_=False):
    """Haar-distributed n x n orthogonal (or unitary) matrix."""
    z = rng.standard_normal((n, n))
    if complex_:
        z = (z + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    ph = d / np.abs(d)
    return q * ph
