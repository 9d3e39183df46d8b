"""Cauchy–Schwarz surrogate for the uniform bound on μ_t over an H₀^α ball.

With the mode functionals m_n(t) = μ_t(φ_n) of one path and any truncated
mean-zero f,

    |μ_t(f)| = |Σ f_n m_n(t)| ≤ ‖f‖_{H₀^α} · √(Σ_{n≤N} λ_n^{−α} m_n(t)²).

The right factor's supremum over checkpoints is the path's empirical C(ω).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Sequence

import numpy as np

from core_green.green_operators import sobolev_norm
from core_green.spectral_function import SpectralFunction
from core_lil.defaults import harness_thresholds
from core_spectral.eigenbasis import SpectralTruncation, eigenvalues
from core_spectral.errors import AdmissibilityError, ManifoldMismatchError, SpectralLabError
from core_spectral.manifold import ManifoldSpec

logger = logging.getLogger(__name__)


def admissible_alpha_floor(manifold: ManifoldSpec) -> float:
    d = manifold.dimension
    return max(d - 1.5, d / 2.0)


@dataclass(slots=True)
class UniformBoundReport:
    alpha: float
    modes: int
    samples: int
    checkpoints: int
    max_ratio: float
    violations: int
    empirical_constant: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def as_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "modes": self.modes,
            "samples": self.samples,
            "checkpoints": self.checkpoints,
            "max_ratio": self.max_ratio,
            "violations": self.violations,
            "empirical_constant": self.empirical_constant,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def mode_functional_factor(mode_mu: np.ndarray, lambdas: np.ndarray, alpha: float) -> np.ndarray:
    """√(Σ λ_n^{−α} m_n(t)²) per checkpoint."""

    return np.sqrt(np.sum(lambdas ** (-alpha) * mode_mu**2, axis=-1))


def uniform_bound_check(
    mode_mu: np.ndarray,
    manifold: ManifoldSpec,
    alpha: float,
    samples: Sequence[SpectralFunction],
    trunc: SpectralTruncation,
) -> UniformBoundReport:
    """Check the surrogate inequality for every sample at every checkpoint.

    ``mode_mu`` has shape (checkpoints, N) with column n−1 holding μ_t(φ_n).
    """

    floor = admissible_alpha_floor(manifold)
    if not alpha > floor:
        raise AdmissibilityError(f"α={alpha} is not above max(d − 3/2, d/2) = {floor} on {manifold.label()}")
    modes = trunc.modes
    matrix = np.asarray(mode_mu, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != modes:
        raise SpectralLabError(f"Mode functionals need shape (checkpoints, {modes}), got {matrix.shape}")

    lambdas = eigenvalues(manifold, modes + 1)[1:]
    factor = mode_functional_factor(matrix, lambdas, alpha)
    tolerance = float(harness_thresholds()["uniform_bound"]["tolerance"])

    max_ratio = 0.0
    violations = 0
    for f in samples:
        if f.manifold != manifold:
            raise ManifoldMismatchError(f"Sample on {f.manifold.label()} for {manifold.label()}")
        if f.size - 1 > modes:
            raise SpectralLabError(f"Sample uses {f.size - 1} modes, only {modes} are tracked")
        coeffs = f.padded(modes + 1)[1:]
        lhs = np.abs(matrix @ coeffs)
        rhs = sobolev_norm(f, alpha) * factor
        violations += int(np.count_nonzero(lhs > rhs + tolerance * np.maximum(1.0, rhs)))
        positive = rhs > 0
        if np.any(positive):
            max_ratio = max(max_ratio, float(np.max(lhs[positive] / rhs[positive])))

    report = UniformBoundReport(
        alpha=float(alpha),
        modes=modes,
        samples=len(samples),
        checkpoints=int(matrix.shape[0]),
        max_ratio=max_ratio,
        violations=violations,
        empirical_constant=float(np.max(factor)) if factor.size else 0.0,
        tolerance=tolerance,
    )
    if violations:
        logger.warning("Uniform-bound surrogate violated %d times at α=%s", violations, alpha)
    return report


def random_mean_zero_functions(
    manifold: ManifoldSpec, modes: int, count: int, rng: np.random.Generator
) -> list[SpectralFunction]:
    """Gaussian coefficient vectors on φ_1..φ_modes."""

    functions = []
    for _ in range(count):
        coeffs = np.concatenate(([0.0], rng.standard_normal(modes)))
        functions.append(SpectralFunction(manifold, coeffs))
    return functions


__all__ = [
    "UniformBoundReport",
    "admissible_alpha_floor",
    "mode_functional_factor",
    "random_mean_zero_functions",
    "uniform_bound_check",
]
