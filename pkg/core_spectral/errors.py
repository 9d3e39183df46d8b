"""Exception hierarchy shared by every package of the lab.

Every error derives from ``ValueError`` so callers that only guard against
bad inputs keep working.
"""

from __future__ import annotations


class SpectralLabError(ValueError):
    """Base class for precondition failures raised by the lab."""


class TruncationError(SpectralLabError):
    """A truncation is invalid or too small for the requested modes."""


class EigenIndexError(SpectralLabError):
    """An eigenfunction index lies outside the enumerated range."""


class SmallTimeError(SpectralLabError):
    """Heat-kernel time is non-positive or below the truncation cutoff."""


class NotMeanZeroError(SpectralLabError):
    """A function with a nonzero constant coefficient was given where L²₀ is required."""


class ManifoldMismatchError(SpectralLabError):
    """Two operands live on different manifolds."""


class DiagonalKernelError(SpectralLabError):
    """A kernel was requested on the diagonal where the exact kernel diverges."""


class QuadratureToleranceError(SpectralLabError):
    """Numerical quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, achieved_error: float) -> None:
        super().__init__(message)
        self.achieved_error = achieved_error


class NormalizationUndefinedError(SpectralLabError):
    """μ_t was requested for t < 3 where √(2t log log t) is not used."""


class HorizonExceededError(SpectralLabError):
    """A step would advance a path beyond its configured horizon."""


class AdmissibilityError(SpectralLabError):
    """A Sobolev exponent lies outside the admissible range."""


class SingularGramError(SpectralLabError):
    """Observables are linearly dependent (Green–Gram matrix near singular)."""


class TargetOutsideBallError(SpectralLabError):
    """A chase target is not strictly inside the limit ball."""


class RunConfigError(SpectralLabError):
    """A CLI run configuration failed validation."""


__all__ = [
    "AdmissibilityError",
    "DiagonalKernelError",
    "EigenIndexError",
    "HorizonExceededError",
    "ManifoldMismatchError",
    "NormalizationUndefinedError",
    "NotMeanZeroError",
    "QuadratureToleranceError",
    "RunConfigError",
    "SingularGramError",
    "SmallTimeError",
    "SpectralLabError",
    "TargetOutsideBallError",
    "TruncationError",
]
