"""Reference generalized singular values straight from the Gram pencil.

This path never looks at the stacked SVD.  It solves the definite pencil
``A^H A v = c^2 (A^H A + B^H B) v`` and reports ``(alpha, beta) =
(sqrt(c^2), sqrt(1 - c^2))``, the representative with
``alpha^2 + beta^2 = 1``.

Forming Gram matrices squares the condition number, so the raw eigenvalues
lose about ``eps * cond^2`` and padded zero alphas come back as
``O(sqrt(eps))``.  With ``refine >= 1`` the pencil is re-solved in the
congruence basis of the previous eigenvectors (where the Grams are well
conditioned) and each pair is read off as the Rayleigh quotient
``||A v|| / ||[A; B] v||`` evaluated on A and B directly.
"""

import dataclasses

import numpy as np

from .errors import NotGMP
from .linalg import hermitian_definite_eig, singular_values_only


@dataclasses.dataclass(frozen=True)
class OracleResult:
    alpha: np.ndarray
    beta: np.ndarray
    eigenvalues_c2: np.ndarray  # raw first-pass pencil eigenvalues, unclamped
    residuals: np.ndarray
    vectors: np.ndarray

    @property
    def pairs(self):
        return list(zip(self.alpha.tolist(), self.beta.tolist()))


def _gram(x):
    return x.conj().T @ x


def _solve_pencil(a, b):
    ga = _gram(a)
    gs = ga + _gram(b)
    return hermitian_definite_eig(ga, gs), ga, gs


def oracle_gsv(pair, refine=1):
    """GSV pairs of ``pair`` from the Gram pencil.

    ``refine=0`` is the plain Cholesky-reduced pencil solve with
    ``alpha = sqrt(clamp(c^2))``.  Raises NotPositiveDefinite when
    ``A^H A + B^H B`` cannot be factored.
    """
    a, b = pair.a, pair.b
    (c2, vecs), ga, gs = _solve_pencil(a, b)
    residuals = np.linalg.norm(ga @ vecs - (gs @ vecs) * c2, axis=0)

    if refine <= 0:
        alpha = np.sqrt(np.clip(c2, 0.0, 1.0))
        beta = np.sqrt(np.clip(1.0 - c2, 0.0, 1.0))
        return OracleResult(alpha, beta, c2, residuals, vecs)

    z = vecs
    for _ in range(refine):
        (_, y), _, _ = _solve_pencil(a @ z, b @ z)
        z = z @ y
    na = np.linalg.norm(a @ z, axis=0)
    nb = np.linalg.norm(b @ z, axis=0)
    scale = np.hypot(na, nb)
    alpha, beta = na / scale, nb / scale
    order = np.lexsort((beta, -alpha))
    return OracleResult(alpha[order], beta[order], c2, residuals, z[:, order])


def det_residual(pair, alpha, beta):
    """Smallest singular value of ``beta^2 A^H A - alpha^2 B^H B``.

    Zero exactly when ``(alpha, beta)`` is a generalized singular value;
    used instead of the determinant, which under/overflows at scale.
    """
    if alpha == 0 and beta == 0:
        raise ValueError("(alpha, beta) must not be (0, 0)")
    h = beta**2 * _gram(pair.a) - alpha**2 * _gram(pair.b)
    return float(singular_values_only(h)[-1])


def det_residual_scale(pair):
    return float(np.linalg.norm(_gram(pair.a)) + np.linalg.norm(_gram(pair.b)))


def brute_force_gsv_diagonal(d_a, d_b):
    """Closed-form pairs for A = diag(d_a), B = diag(d_b), alpha non-increasing."""
    d_a = np.abs(np.asarray(d_a, dtype=np.float64))
    d_b = np.abs(np.asarray(d_b, dtype=np.float64))
    if d_a.shape != d_b.shape:
        raise ValueError("d_a and d_b must have equal length")
    r = np.hypot(d_a, d_b)
    if np.any(r == 0):
        raise NotGMP(f"index {int(np.argmin(r))} has both diagonal entries zero")
    alpha, beta = d_a / r, d_b / r
    order = np.lexsort((beta, -alpha))
    return list(zip(alpha[order].tolist(), beta[order].tolist()))
