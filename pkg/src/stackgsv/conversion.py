"""Generalized singular values from the SVD of the stacked matrix.

Given the SVD ``[A; B] = L diag(s) K^H`` of a full-column-rank pair, the
first ``n`` columns of ``L`` split into an ``m x n`` top block and a
``p x n`` bottom block.  The singular values of the top block are the
``alpha`` values and those of the bottom block the ``beta`` values, with
zero padding when a block has fewer rows than ``n``.  No Gram matrix is
ever formed on this path.
"""

import dataclasses
import enum
import time
from typing import Optional

import numpy as np

from .errors import InvalidInput, NotGMP
from .linalg import inverse_sqrt_hermitian, singular_values_only
from .pair import RankTolerance, certify, require_gmp, stack


class Mode(str, enum.Enum):
    INDEPENDENT = "independent"
    COMPLEMENTARY = "complementary"


@dataclasses.dataclass(frozen=True)
class StackedSvdParts:
    l1_h: np.ndarray  # m x n
    l2_h: np.ndarray  # p x n
    stacked_singular_values: np.ndarray
    k: np.ndarray  # n x n right factor, stacked = L diag(s) K^H

    def orthonormality_residual(self):
        q = np.vstack([self.l1_h, self.l2_h])
        return float(np.linalg.norm(q.conj().T @ q - np.eye(q.shape[1])))


@dataclasses.dataclass(frozen=True)
class GsvSpectrum:
    alpha: np.ndarray
    beta: np.ndarray
    gamma: Optional[np.ndarray]
    theta: Optional[np.ndarray]
    mode: Mode
    pair_sum_residual: np.ndarray
    certificate: object = None
    timings_ms: dict = dataclasses.field(default_factory=dict)

    @property
    def pairs(self):
        return list(zip(self.alpha.tolist(), self.beta.tolist()))

    @property
    def n(self):
        return len(self.alpha)


def _split_left_factor(stacked, m, n):
    # Only the first n columns of L enter the partition, so the thin SVD is enough.
    u, s, vh = np.linalg.svd(stacked, full_matrices=False)
    return u[:m, :], u[m:, :], s, vh.conj().T


def stacked_svd_parts(pair, rank_tolerance: RankTolerance = None):
    """Compute the stacked SVD and return its blocks plus the rank certificate.

    Raises NotGMP when ``[A; B]`` is numerically rank deficient.
    """
    parts, _ = _parts_and_certificate(pair, rank_tolerance)
    return parts


def _parts_and_certificate(pair, rank_tolerance=None):
    m, p, n = pair.shape
    if m + p < n:
        raise NotGMP(f"m + p = {m + p} < n = {n}: rank n is impossible")
    l1_h, l2_h, s, k = _split_left_factor(stack(pair), m, n)
    cert = require_gmp(certify(s, m, p, n, rank_tolerance), n)
    return StackedSvdParts(l1_h, l2_h, s, k), cert


def _clamp01(x):
    return np.clip(x, 0.0, 1.0)


def _partner(x):
    # sqrt(1 - x^2) without the cancellation of 1 - x*x near x = 1
    return np.sqrt((1.0 - x) * (1.0 + x))


def gsv_from_parts(parts, shape, mode=Mode.COMPLEMENTARY):
    """Assemble the n pairs (alpha_i, beta_i) from the stacked-SVD blocks.

    ``alpha`` is non-increasing with ``n - m`` trailing zeros when ``m < n``;
    ``beta`` is non-decreasing with ``n - p`` leading zeros when ``p < n``.
    Complementary mode computes only the block with fewer rows (the top
    block on ties) and fills in the partner from ``alpha^2 + beta^2 = 1``.
    """
    mode = Mode(mode)
    m, p, n = shape
    ma, pb = min(m, n), min(p, n)
    n_beta_zero = n - pb
    gamma = theta = None
    t0 = time.perf_counter()

    if mode is Mode.INDEPENDENT or m <= p:
        gamma = singular_values_only(parts.l1_h)[:ma]
    if mode is Mode.INDEPENDENT or p < m:
        theta = singular_values_only(parts.l2_h)[:pb][::-1].copy()

    alpha = np.zeros(n)
    beta = np.zeros(n)
    if gamma is not None:
        alpha[:ma] = _clamp01(gamma)
    if theta is not None:
        beta[n_beta_zero:] = _clamp01(theta)

    if mode is Mode.COMPLEMENTARY:
        if gamma is not None:
            beta = _partner(alpha)
        else:
            alpha = _partner(beta)
        # structural zeros are exact; keep the partner at exactly 1 there
        alpha[ma:] = 0.0
        beta[ma:] = 1.0
        beta[:n_beta_zero] = 0.0
        alpha[:n_beta_zero] = 1.0
    residual = np.abs(alpha * alpha + beta * beta - 1.0)
    if mode is Mode.COMPLEMENTARY:
        residual = np.zeros(n)
    timings = {"block_svd_ms": 1e3 * (time.perf_counter() - t0)}
    return GsvSpectrum(alpha, beta, gamma, theta, mode, residual, timings_ms=timings)


def gsv(pair, mode=Mode.COMPLEMENTARY, rank_tolerance: RankTolerance = None):
    """Generalized singular values of a full-column-rank pair via one stacked SVD."""
    t0 = time.perf_counter()
    parts, cert = _parts_and_certificate(pair, rank_tolerance)
    t_svd = 1e3 * (time.perf_counter() - t0)
    spec = gsv_from_parts(parts, pair.shape, mode)
    timings = {"stacked_svd_ms": t_svd, **spec.timings_ms}
    return dataclasses.replace(spec, certificate=cert, timings_ms=timings)


def unitary_equivalence_residual(pair, parts):
    """Return ``(||A S^{-1/2} - L1h K^H||_F, ||B S^{-1/2} - L2h K^H||_F)``.

    ``S = A^H A + B^H B``.  Diagnostic only: forming ``S`` squares the
    condition number.
    """
    a, b = pair.a, pair.b
    s = a.conj().T @ a + b.conj().T @ b
    s_inv_half = inverse_sqrt_hermitian(s)
    kh = parts.k.conj().T
    ra = np.linalg.norm(a @ s_inv_half - parts.l1_h @ kh)
    rb = np.linalg.norm(b @ s_inv_half - parts.l2_h @ kh)
    return float(ra), float(rb)


def sorted_pairs(alpha, beta):
    """Pairs as an (n, 2) array ordered by alpha descending, then beta ascending."""
    alpha = np.asarray(alpha, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    if alpha.shape != beta.shape:
        raise InvalidInput("alpha and beta lengths differ")
    order = np.lexsort((beta, -alpha))
    return np.column_stack([alpha[order], beta[order]])
