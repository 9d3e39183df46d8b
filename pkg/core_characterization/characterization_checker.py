"""
Characterization Checker
------------------------
Decides whether a signed measure μ with spectral density g = dμ/dm is a
possible limit of the normalized occupation functionals:

  (a) μ is a signed measure              structurally true for L² densities
  (b) μ(M) = 0                           g_0 = 0
  (c) g ∈ L²                             ‖g‖_{L²} = √(Σ g_n²)
  (d) ‖G_{1/2}^{−1} g‖_{L²} ≤ √(2/m₀)    √(Σ_{n≥1} (λ_n/2) g_n²)

The admissible set is closed, so the boundary of (d) counts as a member.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict

import numpy as np

from core_green.green_operators import inner_product_L2, l2_embedding_constant, l2_norm, sobolev_norm
from core_green.spectral_function import SpectralFunction, require_mean_zero, require_same_manifold
from core_lil.defaults import harness_thresholds
from core_lil.ellipsoid import ball_membership, ball_radius, ellipsoid_from
from core_lil.observable_basis import make_basis
from core_spectral.eigenbasis import SpectralTruncation
from core_spectral.errors import ManifoldMismatchError, TruncationError
from core_spectral.manifold import ManifoldSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CandidateDensity:
    g: SpectralFunction

    @property
    def manifold(self) -> ManifoldSpec:
        return self.g.manifold

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "CandidateDensity":
        return cls(SpectralFunction.from_json(payload))


@dataclass(slots=True)
class CheckReport:
    cond_a: bool
    cond_b: bool
    mean: float
    cond_c: bool
    l2_norm: float
    cond_d: bool
    half_inverse_norm: float
    threshold: float
    margin: float
    verdict: bool

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _boundary_tolerance() -> float:
    return float(harness_thresholds()["boundary"]["tolerance"])


def half_inverse_norm(g: SpectralFunction) -> float:
    """√(Σ_{n≥1} (λ_n/2) g_n²), the norm in condition (d); g_0 is ignored."""

    lambdas = g.eigenvalues()
    return math.sqrt(float(np.sum(lambdas[1:] / 2.0 * g.coeffs[1:] ** 2)))


def check(density: CandidateDensity, manifold: ManifoldSpec) -> CheckReport:
    g = density.g
    if g.manifold != manifold:
        raise ManifoldMismatchError(f"Density on {g.manifold.label()} checked against {manifold.label()}")

    threshold = ball_radius(manifold)
    value = half_inverse_norm(g)
    # compare in the squared scale shared with ball membership
    cond_d = value**2 / threshold**2 <= 1.0 + _boundary_tolerance()
    cond_b = g.mean_zero
    norm = l2_norm(g)
    report = CheckReport(
        cond_a=True,
        cond_b=cond_b,
        mean=g.integral(),
        cond_c=math.isfinite(norm),
        l2_norm=norm,
        cond_d=cond_d,
        half_inverse_norm=value,
        threshold=threshold,
        margin=threshold - value,
        verdict=cond_b and math.isfinite(norm) and cond_d,
    )
    logger.debug("Characterization on %s: %s", manifold.label(), report.as_dict())
    return report


def mu_of(density: CandidateDensity, f: SpectralFunction) -> float:
    """μ(f) = (g, f)_{L²}."""

    return inner_product_L2(density.g, f)


@dataclass(slots=True)
class EquivalenceReport:
    modes: int
    cond_d: bool
    ball_member: bool
    density_sum: float
    ball_sum: float
    discrepancy: float
    form_value: float

    @property
    def agree(self) -> bool:
        return self.cond_d == self.ball_member

    def as_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["agree"] = self.agree
        return payload


def ball_equivalence_check(density: CandidateDensity, manifold: ManifoldSpec, n_max: int) -> EquivalenceReport:
    """Compare condition (d) with ball membership of (μ(f_1), …, μ(f_N))."""

    g = density.g
    require_mean_zero(g, "Ball equivalence")
    modes = g.size - 1
    if modes > n_max:
        raise TruncationError(f"Density uses {modes} modes, more than n_max={n_max}")

    report = check(density, manifold)
    density_sum = report.half_inverse_norm**2
    if modes == 0:
        return EquivalenceReport(0, report.cond_d, True, density_sum, 0.0, density_sum, 0.0)

    basis = make_basis(manifold, modes, SpectralTruncation(modes))
    vector = np.array([mu_of(density, f) for f in basis.functions])
    membership = ball_membership(vector, ellipsoid_from(basis.functions, manifold))
    ball_sum = float(np.dot(vector, vector))
    return EquivalenceReport(
        modes=modes,
        cond_d=report.cond_d,
        ball_member=membership.member,
        density_sum=density_sum,
        ball_sum=ball_sum,
        discrepancy=abs(density_sum - ball_sum),
        form_value=membership.form_value,
    )


@dataclass(slots=True)
class LimitFunctionalBound:
    value: float
    l2_bound: float
    sobolev_bound: float
    alpha: float
    embedding_constant: float

    @property
    def holds(self) -> bool:
        slack = 1e-12 * max(1.0, self.l2_bound)
        return self.value <= self.l2_bound + slack and self.value <= self.sobolev_bound + slack

    def as_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["holds"] = self.holds
        return payload


def limit_functional_bound(density: CandidateDensity, f: SpectralFunction, alpha: float = 1.0) -> LimitFunctionalBound:
    """Continuity of the limit functional: |μ(f)| ≤ ‖f‖_{L²}‖g‖_{L²} ≤ C ‖f‖_{H₀^α}‖g‖_{L²}.

    C = max(1, λ₁^{−α/2}) is the L² ↪ H₀^α embedding constant.
    """

    require_same_manifold(density.g, f)
    require_mean_zero(f, "Limit functional bound")
    g_norm = l2_norm(density.g)
    constant = l2_embedding_constant(f.manifold, alpha)
    return LimitFunctionalBound(
        value=abs(mu_of(density, f)),
        l2_bound=l2_norm(f) * g_norm,
        sobolev_bound=constant * sobolev_norm(f, alpha) * g_norm,
        alpha=float(alpha),
        embedding_constant=constant,
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
