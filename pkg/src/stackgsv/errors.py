"""Exception hierarchy shared by every module."""

import numpy as np


class GsvError(Exception):
    """Base class for all errors raised by stackgsv."""


class InvalidInput(GsvError, ValueError):
    """Non-finite, empty, or otherwise unusable numeric input."""


class ShapeMismatch(GsvError, ValueError):
    """Matrices whose dimensions are incompatible for the requested operation."""


class NotGMP(GsvError, ValueError):
    """The stacked matrix [A; B] does not have full column rank."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotPositiveDefinite(GsvError, np.linalg.LinAlgError):
    """Cholesky factorization broke down."""


class ParseError(GsvError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedFormat(GsvError, ValueError):
    pass


class InfeasibleSpec(GsvError, ValueError):
    """A generator spec that no matrix pair of the requested shape can satisfy."""
