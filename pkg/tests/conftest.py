import numpy as np
import pytest

from stackgsv.config import get_tolerances
from stackgsv.generate import PairGenSpec, generate_pair

ORDERINGS = [(a, b) for a in "<=>" for b in "<=>"]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def tol():
    return get_tolerances()


def shape_for(m_vs_n, p_vs_n, rng, n_max=12):
    """Random (m, p, n) with the requested orderings of m and p relative to n."""
    while True:
        n = int(rng.integers(2, n_max + 1))

        def dim(o):
            if o == "<":
                return int(rng.integers(1, n))
            if o == "=":
                return n
            return int(rng.integers(n + 1, n + 8))

        m, p = dim(m_vs_n), dim(p_vs_n)
        if m + p >= n:
            return m, p, n


def random_pair(rng, m, p, n, cond=10.0, kind="real"):
    spec = PairGenSpec(m, p, n, kind, cond, int(rng.integers(2**63)))
    return generate_pair(spec, return_truth=True)


def random_matrix(rng, rows, cols, complex_=False):
    x = rng.standard_normal((rows, cols))
    if complex_:
        x = x + 1j * rng.standard_normal((rows, cols))
    return x


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
