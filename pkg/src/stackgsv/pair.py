"""Matrix pairs and the full-column-rank (Grassmann pair) check."""

import dataclasses
from typing import Callable, Union

import numpy as np

from .errors import NotGMP, ShapeMismatch
from .linalg import EPS, as_matrix, singular_values_only

# Below this scale A^H A underflows, so the Gram-based diagnostics cannot run.
SCALE_FLOOR = np.sqrt(np.finfo(np.float64).tiny)

RankTolerance = Union[None, float, Callable[[np.ndarray, int, int, int], float]]


@dataclasses.dataclass(frozen=True)
class MatrixPair:
    """A pair {A, B} with A m x n and B p x n.

    Inputs are copied and frozen; a real/complex mix is promoted to complex.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.a, "A")
        b = as_matrix(self.b, "B")
        if a.shape[1] != b.shape[1]:
            raise ShapeMismatch(
                f"A has {a.shape[1]} columns but B has {b.shape[1]}")
        if np.iscomplexobj(a) != np.iscomplexobj(b):
            a = a.astype(np.complex128)
            b = b.astype(np.complex128)
        a = a.copy()
        b = b.copy()
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def m(self):
        return self.a.shape[0]

    @property
    def p(self):
        return self.b.shape[0]

    @property
    def n(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return (self.m, self.p, self.n)

    @property
    def scalar_kind(self):
        return "complex" if np.iscomplexobj(self.a) else "real"


def stack(pair):
    """The (m+p) x n matrix [A; B]."""
    if pair.a.shape[1] != pair.b.shape[1]:
        raise ShapeMismatch("column counts differ")
    return np.vstack([pair.a, pair.b])


@dataclasses.dataclass(frozen=True)
class GmpCertificate:
    stacked_singular_values: np.ndarray
    numerical_rank: int
    rank_tolerance: float
    is_gmp: bool

    @property
    def gap(self):
        """sigma_min / sigma_max of the stacked matrix (0 when rank deficient)."""
        s = self.stacked_singular_values
        if s[0] == 0:
            return 0.0
        return float(s[-1] / s[0])

    @property
    def condition_number(self):
        g = self.gap
        return np.inf if g == 0 else 1.0 / g


def default_rank_tolerance(sv, m, p, n):
    return max(max(m + p, n) * EPS * float(sv[0]), SCALE_FLOOR)


def certify(sv, m, p, n, rank_tolerance: RankTolerance = None):
    """Build a certificate from already computed stacked singular values."""
    sv = np.asarray(sv, dtype=np.float64)
    if rank_tolerance is None:
        tol = default_rank_tolerance(sv, m, p, n)
    elif callable(rank_tolerance):
        tol = float(rank_tolerance(sv, m, p, n))
    else:
        tol = float(rank_tolerance)
    rank = int(np.count_nonzero(sv > tol))
    return GmpCertificate(sv, rank, tol, rank == n)


def validate_gmp(pair, rank_tolerance: RankTolerance = None) -> GmpCertificate:
    """Numerical-rank test of Definition-style full column rank of [A; B].

    The default tolerance is ``max(m+p, n) * eps * sigma_max`` with an
    absolute floor at ``sqrt(tiny)``.  Raises NotGMP outright when
    ``m + p < n``.
    """
    m, p, n = pair.shape
    if m + p < n:
        raise NotGMP(f"m + p = {m + p} < n = {n}: rank n is impossible")
    sv = singular_values_only(stack(pair))
    return certify(sv, m, p, n, rank_tolerance)


def require_gmp(cert: GmpCertificate, n: int) -> GmpCertificate:
    if not cert.is_gmp:
        raise NotGMP(
            f"stacked matrix has numerical rank {cert.numerical_rank} < n = {n} "
            f"(rank tolerance {cert.rank_tolerance:.3e})", cert)
    return cert
