"""Generalized singular values of matrix pairs from a single stacked SVD."""

__version__ = "0.1.0"

from .conversion import (  # noqa: E402
    GsvSpectrum,
    Mode,
    StackedSvdParts,
    gsv,
    gsv_from_parts,
    stacked_svd_parts,
    unitary_equivalence_residual,
)
from .errors import (  # noqa: E402
    GsvError,
    InfeasibleSpec,
    InvalidInput,
    NotGMP,
    NotPositiveDefinite,
    ParseError,
    ShapeMismatch,
    UnsupportedFormat,
)
from .generate import PairGenSpec, generate_pair  # noqa: E402
from .oracle import brute_force_gsv_diagonal, det_residual, oracle_gsv  # noqa: E402
from .pair import GmpCertificate, MatrixPair, stack, validate_gmp  # noqa: E402
