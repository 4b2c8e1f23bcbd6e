"""Tolerance configuration.

All invariant checks read their thresholds from a single :class:`Tolerances`
record.  Defaults can be overridden by pointing ``STACKGSV_TOLERANCES`` at a
TOML file whose top-level keys are field names, e.g.::

    oracle_match = 1e-9
    verify_default = 1e-7
"""

import dataclasses
import os
import sys
from functools import lru_cache

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ENV_VAR = "STACKGSV_TOLERANCES"


@dataclasses.dataclass(frozen=True)
class Tolerances:
    # multiples of machine epsilon
    svd_factor: float = 50.0
    eig_residual: float = 100.0
    # absolute / relative thresholds
    cholesky_reconstruction: float = 1e-12
    values_only_match: float = 1e-13
    pair_sum: float = 1e-12
    padding: float = 1e-12
    invariance: float = 1e-12
    mode_agreement: float = 1e-10
    oracle_match: float = 1e-10
    det_membership: float = 1e-8
    unitary_equivalence: float = 1e-10
    generator_fidelity: float = 1e-11
    closed_form: float = 1e-12
    eig_range_slack: float = 1e-12
    verify_default: float = 1e-8


def load_tolerances(path):
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    known = {f.name for f in dataclasses.fields(Tolerances)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown tolerance keys in {path}: {sorted(unknown)}")
    return Tolerances(**{k: float(v) for k, v in data.items()})


@lru_cache(maxsize=None)
def _cached(path):
    return load_tolerances(path) if path else Tolerances()


def get_tolerances():
    """Return the active tolerances, honouring ``$STACKGSV_TOLERANCES``."""
    return _cached(os.environ.get(ENV_VAR, ""))
