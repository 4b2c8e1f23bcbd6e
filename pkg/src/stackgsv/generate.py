"""Random matrix pairs with planted generalized singular values.

A pair is built as ``A = U Da X`` and ``B = V Db X`` where ``U``, ``V`` are
Haar unitary, ``[Da; Db]`` has orthonormal columns carrying the target
``(alpha_i, beta_i)``, and ``X = W1 diag(s) W2^H`` with ``s`` log-spaced
from 1 down to ``1 / cond``.  The stacked matrix then has condition number
``cond`` exactly and the pair's GSVs are the targets by construction.

Randomness comes from numpy's PCG64 bit generator (``default_rng``), seeded
from the spec's 64-bit seed.
"""

import dataclasses
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import InfeasibleSpec
from .linalg import random_unitary
from .pair import MatrixPair


@dataclasses.dataclass(frozen=True)
class PairGenSpec:
    m: int
    p: int
    n: int
    scalar_kind: str = "real"
    stacked_condition_target: float = 1.0
    seed: int = 0
    cluster_spec: Optional[Sequence[Tuple[float, int]]] = None

    def __post_init__(self):
        for name in ("m", "p", "n"):
            if int(getattr(self, name)) < 1:
                raise InfeasibleSpec(f"{name} must be a positive integer")
        if self.scalar_kind not in ("real", "complex"):
            raise InfeasibleSpec(f"unknown scalar kind {self.scalar_kind!r}")
        if not self.stacked_condition_target >= 1.0:
            raise InfeasibleSpec("stacked_condition_target must be >= 1")
        if self.m + self.p < self.n:
            raise InfeasibleSpec(f"m + p = {self.m + self.p} < n = {self.n}")
        if not 0 <= self.seed < 2**64:
            raise InfeasibleSpec("seed must be a 64-bit unsigned integer")
        if self.cluster_spec is not None:
            total = 0
            for value, mult in self.cluster_spec:
                if not 0.0 < value <= 1.0:
                    raise InfeasibleSpec(f"cluster value {value} outside (0, 1]")
                if int(mult) < 1:
                    raise InfeasibleSpec("cluster multiplicities must be positive")
                total += int(mult)
            if total != self.n:
                raise InfeasibleSpec(f"cluster multiplicities sum to {total}, expected n={self.n}")


def _ratio_halfwidth(cond):
    # log10 half-width of the planted alpha/beta ratio range
    return max(1.0, 0.5 * np.log10(cond))


def planted_alpha(spec, rng):
    """Target alphas, non-increasing, including the structural zeros and ones."""
    m, p, n = spec.m, spec.p, spec.n
    n_zero = max(n - m, 0)  # alpha forced to 0 at the tail
    n_one = max(n - p, 0)  # beta forced to 0 at the head
    if spec.cluster_spec is not None:
        alpha = np.concatenate([np.full(int(k), float(v)) for v, k in spec.cluster_spec])
        alpha = np.sort(alpha)[::-1]
        if np.count_nonzero(alpha > 0) > min(m, n):
            raise InfeasibleSpec(
                f"{np.count_nonzero(alpha > 0)} nonzero alpha targets exceed min(m, n) = {min(m, n)}")
        if np.count_nonzero(alpha < 1) > min(p, n):
            raise InfeasibleSpec(
                f"{np.count_nonzero(alpha < 1)} alpha targets below 1 exceed min(p, n) = {min(p, n)}")
        return alpha
    free = n - n_zero - n_one
    h = _ratio_halfwidth(spec.stacked_condition_target)
    ratio = 10.0 ** rng.uniform(-h, h, size=free)
    middle = np.sort(ratio / np.sqrt(1.0 + ratio**2))[::-1]
    return np.concatenate([np.ones(n_one), middle, np.zeros(n_zero)])


def generate_pair(spec, return_truth=False):
    """Draw a pair whose GSVs are planted; optionally return ``(pair, alpha, beta)``."""
    rng = np.random.default_rng(spec.seed)
    m, p, n = spec.m, spec.p, spec.n
    cplx = spec.scalar_kind == "complex"
    alpha = planted_alpha(spec, rng)
    beta = np.sqrt((1.0 - alpha) * (1.0 + alpha))

    ma, pb = min(m, n), min(p, n)
    da = np.zeros((m, n))
    da[np.arange(ma), np.arange(ma)] = alpha[:ma]
    db = np.zeros((p, n))
    db[np.arange(pb), np.arange(n - pb, n)] = beta[n - pb:]

    u = random_unitary(m, rng, cplx)
    v = random_unitary(p, rng, cplx)
    s = np.logspace(0.0, -np.log10(spec.stacked_condition_target), n)
    if spec.stacked_condition_target == 1.0:
        x = random_unitary(n, rng, cplx)
    else:
        w1 = random_unitary(n, rng, cplx)
        w2 = random_unitary(n, rng, cplx)
        x = (w1 * s) @ w2.conj().T
    pair = MatrixPair(u @ da @ x, v @ db @ x)
    if return_truth:
        return pair, alpha, beta
    return pair
