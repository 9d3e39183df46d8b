"""Membership checks for the set of limiting distributions of μ_t."""

from core_characterization.characterization_checker import (
    CandidateDensity,
    CheckReport,
    EquivalenceReport,
    LimitFunctionalBound,
    ball_equivalence_check,
    check,
    half_inverse_norm,
    limit_functional_bound,
    mu_of,
)

__all__ = [
    "CandidateDensity",
    "CheckReport",
    "EquivalenceReport",
    "LimitFunctionalBound",
    "ball_equivalence_check",
    "check",
    "half_inverse_norm",
    "limit_functional_bound",
    "mu_of",
]
