"""Spectral calculus of the Green operators G_α = (−Δ_M/2)^{−α}.

Every operator is a diagonal multiplier on eigenbasis coefficients:

* ``G_α``          φ_0 ↦ 0,  φ_n ↦ 2^α λ_n^{−α} φ_n
* ``G_{1/2}^{−1}`` φ_n ↦ √(λ_n/2) φ_n on mean-zero functions

Sobolev norms ‖f‖²_{H₀^α} = Σ λ_n^α f_n² and the LIL constant
σ_f = √((2/m₀)(Gf, f)) are read off the same coefficients.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict

import numpy as np

from core_green.spectral_function import SpectralFunction, require_mean_zero, require_same_manifold
from core_spectral.eigenbasis import eigenvalues
from core_spectral.errors import SpectralLabError
from core_spectral.manifold import ManifoldSpec, volume

logger = logging.getLogger(__name__)

SEMIGROUP_TOLERANCE = 1e-12


def _require_positive_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise SpectralLabError(f"Green operators need a finite α > 0, got {alpha!r}")
    return alpha


def green_multiplier(lambdas: np.ndarray, alpha: float) -> np.ndarray:
    """2^α λ_n^{−α} for λ_n > 0 and 0 on the constant mode."""

    alpha = _require_positive_alpha(alpha)
    out = np.zeros_like(lambdas, dtype=np.float64)
    positive = lambdas > 0
    out[positive] = 2.0**alpha * lambdas[positive] ** (-alpha)
    return out


class OperatorKind(Enum):
    G_ALPHA = "G_alpha"
    G_HALF_INVERSE = "G_half_inverse"


@dataclass(frozen=True, slots=True)
class OperatorTag:
    kind: OperatorKind
    alpha: float = 0.5

    def __post_init__(self) -> None:
        if self.kind is OperatorKind.G_ALPHA:
            _require_positive_alpha(self.alpha)

    def multiplier(self, lambdas: np.ndarray) -> np.ndarray:
        if self.kind is OperatorKind.G_ALPHA:
            return green_multiplier(lambdas, self.alpha)
        return np.sqrt(lambdas / 2.0)

    def apply(self, f: SpectralFunction) -> SpectralFunction:
        if self.kind is OperatorKind.G_ALPHA:
            return apply_G_alpha(f, self.alpha)
        return apply_G_half_inverse(f).function


# ===========================================================
# Operators
# ===========================================================


def apply_G_alpha(f: SpectralFunction, alpha: float) -> SpectralFunction:
    return f.with_coeffs(green_multiplier(f.eigenvalues(), alpha) * f.coeffs)


@dataclass(frozen=True, slots=True)
class HalfInverseResult:
    """G_{1/2}^{−1} g together with Σ λ_n g_n², which grows under refinement
    when the untruncated g leaves the domain."""

    function: SpectralFunction
    domain_energy: float


def apply_G_half_inverse(g: SpectralFunction) -> HalfInverseResult:
    require_mean_zero(g, "G_{1/2}^{-1}")
    lambdas = g.eigenvalues()
    result = g.with_coeffs(np.sqrt(lambdas / 2.0) * g.coeffs)
    return HalfInverseResult(function=result, domain_energy=float(np.sum(lambdas * g.coeffs**2)))


# ===========================================================
# Norms and forms
# ===========================================================


def inner_product_L2(f: SpectralFunction, g: SpectralFunction) -> float:
    """Parseval: (f, g)_{L²} = Σ_n f_n g_n."""

    require_same_manifold(f, g)
    size = min(f.size, g.size)
    return float(np.dot(f.coeffs[:size], g.coeffs[:size]))


def l2_norm(f: SpectralFunction) -> float:
    return float(np.sqrt(np.dot(f.coeffs, f.coeffs)))


def sobolev_inner(f: SpectralFunction, g: SpectralFunction, alpha: float) -> float:
    """(f, g)_{H₀^α} = Σ_{n≥1} λ_n^α f_n g_n."""

    alpha = _require_positive_alpha(alpha)
    require_same_manifold(f, g)
    require_mean_zero(f, "H₀^α inner product")
    require_mean_zero(g, "H₀^α inner product")
    size = min(f.size, g.size)
    lambdas = eigenvalues(f.manifold, size)
    return float(np.sum(lambdas[1:] ** alpha * f.coeffs[1:size] * g.coeffs[1:size]))


def sobolev_norm(f: SpectralFunction, alpha: float) -> float:
    alpha = _require_positive_alpha(alpha)
    require_mean_zero(f, "H₀^α norm")
    lambdas = f.eigenvalues()
    return float(np.sqrt(np.sum(lambdas[1:] ** alpha * f.coeffs[1:] ** 2)))


def green_bilinear_form(f: SpectralFunction, g: SpectralFunction) -> float:
    """(f, G g)_{L²} = Σ_{n≥1} 2 λ_n^{−1} f_n g_n."""

    require_same_manifold(f, g)
    require_mean_zero(f, "Green form")
    require_mean_zero(g, "Green form")
    size = min(f.size, g.size)
    lambdas = eigenvalues(f.manifold, size)
    return float(np.sum(2.0 * f.coeffs[1:size] * g.coeffs[1:size] / lambdas[1:]))


def green_quadratic_form(f: SpectralFunction) -> float:
    require_mean_zero(f, "Green form")
    lambdas = f.eigenvalues()
    return float(np.sum(2.0 * f.coeffs[1:] ** 2 / lambdas[1:]))


def lil_sigma(f: SpectralFunction) -> float:
    """σ_f = √((2/m₀)(Gf, f)), the almost sure limsup of μ_t(f)."""

    return math.sqrt(2.0 / volume(f.manifold) * green_quadratic_form(f))


def embedding_constant(manifold: ManifoldSpec, alpha_low: float, alpha_high: float) -> float:
    """C with ‖f‖_{H₀^{α₁}} ≤ C ‖f‖_{H₀^{α₂}} for α₁ < α₂: max(1, λ₁^{(α₁−α₂)/2})."""

    if not alpha_low < alpha_high:
        raise SpectralLabError(f"Embedding needs α₁ < α₂, got {alpha_low!r} ≥ {alpha_high!r}")
    gap = float(eigenvalues(manifold, 2)[1])
    return max(1.0, gap ** ((alpha_low - alpha_high) / 2.0))


def l2_embedding_constant(manifold: ManifoldSpec, alpha: float) -> float:
    """C with ‖f‖_{L²} ≤ C ‖f‖_{H₀^α}: max(1, λ₁^{−α/2})."""

    alpha = _require_positive_alpha(alpha)
    gap = float(eigenvalues(manifold, 2)[1])
    return max(1.0, gap ** (-alpha / 2.0))


# ===========================================================
# Semigroup law
# ===========================================================


@dataclass(slots=True)
class SemigroupReport:
    alpha: float
    beta: float
    modes: int
    max_relative_error: float
    tolerance: float
    passed: bool

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def semigroup_check(alpha: float, beta: float, f: SpectralFunction, tolerance: float = SEMIGROUP_TOLERANCE) -> SemigroupReport:
    """Compare G_β G_α f with G_{α+β} f coefficient by coefficient."""

    composed = apply_G_alpha(apply_G_alpha(f, alpha), beta).coeffs
    direct = apply_G_alpha(f, alpha + beta).coeffs
    scale = np.abs(direct)
    diff = np.abs(composed - direct)
    nonzero = scale > 0
    rel = np.zeros_like(diff)
    rel[nonzero] = diff[nonzero] / scale[nonzero]
    # entries where the direct value vanishes must vanish in the composition too
    rel[~nonzero] = np.where(diff[~nonzero] > 0, np.inf, 0.0)
    worst = float(np.max(rel)) if rel.size else 0.0
    report = SemigroupReport(
        alpha=float(alpha),
        beta=float(beta),
        modes=f.size - 1,
        max_relative_error=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
    )
    if not report.passed:
        logger.warning("Semigroup law violated: α=%s β=%s relative error %.3e", alpha, beta, worst)
    return report


__all__ = [
    "HalfInverseResult",
    "OperatorKind",
    "OperatorTag",
    "SemigroupReport",
    "apply_G_alpha",
    "apply_G_half_inverse",
    "embedding_constant",
    "green_bilinear_form",
    "green_multiplier",
    "green_quadratic_form",
    "inner_product_L2",
    "l2_embedding_constant",
    "l2_norm",
    "lil_sigma",
    "semigroup_check",
    "sobolev_inner",
    "sobolev_norm",
]
