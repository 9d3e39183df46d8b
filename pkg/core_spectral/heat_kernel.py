"""Truncated heat kernels p_N(t,x,y) = Σ_{n≤N} e^{-λ_n t/2} φ_n(x) φ_n(y).

Every evaluation reports a certified truncation-error bound
Σ_{n>N} e^{-λ_n t/2} sup|φ_n|² next to the value.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np

from core_spectral.defaults import spectral_defaults
from core_spectral.eigenbasis import (
    SpectralBasis,
    SpectralTruncation,
    basis_for,
    default_truncation,
)
from core_spectral.errors import SmallTimeError, SpectralLabError
from core_spectral.manifold import ManifoldKind, ManifoldSpec, as_points
from core_spectral.quadrature import point_lattice, quadrature_grid

logger = logging.getLogger(__name__)

# Exponent beyond which e^{-x} underflows to zero in double precision.
_UNDERFLOW_EXPONENT = 750.0


@dataclass(frozen=True, slots=True)
class HeatKernelValue:
    value: float
    truncation_error: float
    t: float
    modes: int

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _check_time(manifold: ManifoldSpec, t: float, truncation: SpectralTruncation) -> None:
    if not t > 0:
        raise SmallTimeError(f"Heat kernel needs t > 0, got {t}")
    min_time = float(spectral_defaults()["heat_kernel"]["min_time"])
    if t < min_time and truncation.modes <= default_truncation(manifold).modes:
        raise SmallTimeError(
            f"t={t:g} is below {min_time:g} at the default truncation; "
            "the truncated series loses positivity there, raise N"
        )


def _box_tail(basis: SpectralBasis, t: float) -> float:
    manifold = basis.manifold
    sup_sq = 2.0 / basis.volume
    if manifold.kind is ManifoldKind.CIRCLE:
        length = manifold.lengths[0]
        last_wave = (basis.truncation.modes + 1) // 2
        tail = 0.0
        if basis.truncation.modes % 2 == 1:
            # the sine partner of the last cosine is not in the basis
            tail += math.exp(-((2.0 * math.pi * last_wave / length) ** 2) * t / 2.0)
        cap = int(math.ceil(length / (2.0 * math.pi) * math.sqrt(2.0 * _UNDERFLOW_EXPONENT / t))) + 2
        waves = np.arange(last_wave + 1, max(cap, last_wave + 1) + 1)
        tail += 2.0 * float(np.sum(np.exp(-((2.0 * math.pi * waves / length) ** 2) * t / 2.0)))
        return sup_sq * tail

    theta_product = 1.0
    for length in manifold.lengths:
        cap = int(math.ceil(length / (2.0 * math.pi) * math.sqrt(2.0 * _UNDERFLOW_EXPONENT / t))) + 2
        waves = np.arange(-cap, cap + 1)
        theta_product *= float(np.sum(np.exp(-((2.0 * math.pi * waves / length) ** 2) * t / 2.0)))
    included = float(np.sum(np.exp(-basis.eigenvalues[1:] * t / 2.0)))
    return max(sup_sq * (theta_product - 1.0 - included), 0.0)


def _sphere_tail(basis: SpectralBasis, t: float) -> float:
    modes = basis.truncation.modes
    last_degree = int(basis.keys[-1, 0]) if modes else 0
    remaining_in_block = (last_degree + 1) ** 2 - 1 - modes
    tail = 0.0
    if remaining_in_block > 0:
        tail += remaining_in_block * math.exp(-last_degree * (last_degree + 1) * t / 2.0) * (
            (2 * last_degree + 1) / (4.0 * math.pi)
        )
    cap = int(math.ceil(math.sqrt(2.0 * _UNDERFLOW_EXPONENT / t))) + 2
    degrees = np.arange(last_degree + 1, max(cap, last_degree + 1) + 1, dtype=np.float64)
    weights = (2.0 * degrees + 1.0) ** 2 / (4.0 * math.pi)
    tail += float(np.sum(weights * np.exp(-degrees * (degrees + 1.0) * t / 2.0)))
    return tail


def truncation_error_bound(basis: SpectralBasis, t: float) -> float:
    """Σ_{n>N} e^{-λ_n t/2} sup|φ_n|² for the modes left out of ``basis``."""

    if basis.manifold.kind is ManifoldKind.SPHERE2:
        return _sphere_tail(basis, t)
    return _box_tail(basis, t)


class HeatKernel:
    """Heat kernel of ½Δ_M truncated to a fixed spectral basis."""

    def __init__(self, manifold: ManifoldSpec, trunc: SpectralTruncation | None = None):
        self.manifold = manifold
        self.truncation = trunc or default_truncation(manifold)
        self.basis = basis_for(manifold, self.truncation)

    def values(self, t: float, x: Any, y: Any) -> np.ndarray:
        """p_N(t, x, y_j) for one x and every y_j (or paired x_i, y_i)."""

        _check_time(self.manifold, t, self.truncation)
        phi_x = self.basis.evaluate(x)
        phi_y = self.basis.evaluate(y)
        decay = np.exp(-self.basis.eigenvalues * t / 2.0)
        return (phi_x * phi_y) @ decay

    def __call__(self, t: float, x: Any, y: Any) -> HeatKernelValue:
        value = self.values(t, x, y)
        if value.shape[0] != 1:
            raise SpectralLabError("HeatKernel() evaluates a single pair; use values() for batches")
        return HeatKernelValue(
            value=float(value[0]),
            truncation_error=truncation_error_bound(self.basis, t),
            t=float(t),
            modes=self.truncation.modes,
        )

    def diagonal_excess(self, t: float, points: Any) -> np.ndarray:
        """p_N(t, x, x) - m₀⁻¹ at every point."""

        _check_time(self.manifold, t, self.truncation)
        phi = self.basis.evaluate(points)
        decay = np.exp(-self.basis.eigenvalues[1:] * t / 2.0)
        return (phi[:, 1:] ** 2) @ decay


def heat_kernel(
    manifold: ManifoldSpec,
    t: float,
    x: Any,
    y: Any,
    trunc: SpectralTruncation | None = None,
) -> HeatKernelValue:
    return HeatKernel(manifold, trunc)(t, x, y)


def wrapped_gaussian_kernel(circumference: float, t: float, x: float, y: float, images: int = 50) -> float:
    """Circle heat kernel by Poisson summation: Σ_k (2πt)^{-1/2} e^{-(x-y-kL)²/2t}."""

    shifts = (x - y) - circumference * np.arange(-images, images + 1)
    return float(np.sum(np.exp(-(shifts**2) / (2.0 * t))) / math.sqrt(2.0 * math.pi * t))


def heat_kernel_mass(manifold: ManifoldSpec, t: float, x: Any, trunc: SpectralTruncation | None = None) -> float:
    """Quadrature estimate of ∫ p_N(t, x, ·) dm."""

    kernel = HeatKernel(manifold, trunc)
    grid = quadrature_grid(manifold)
    return float(grid.weights @ kernel.values(t, as_points(manifold, x), grid.points))


# ===========================================================
# Mixing profile
# ===========================================================


@dataclass(slots=True)
class MixingProfile:
    rows: List[tuple[float, float]]
    expected_rate: float
    fitted_rate: float | None = None
    relative_error: float | None = None
    fit_window: tuple[float, float] | None = None
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def mixing_decay_profile(
    manifold: ManifoldSpec,
    trunc: SpectralTruncation | None,
    times: Sequence[float],
    *,
    fit_window: tuple[float, float] | None = None,
    lattice_per_axis: int | None = None,
) -> MixingProfile:
    """sup_x |p_N(t,x,x) - m₀⁻¹| over a point lattice, with a fitted decay rate.

    The fitted rate is compared to λ₁/2, the decay of the dominant mode.
    """

    grid = [float(t) for t in times]
    if not grid:
        raise SpectralLabError("Mixing profile needs a nonempty time grid")
    if min(grid) <= 0:
        raise SmallTimeError("Mixing profile times must be positive")

    kernel = HeatKernel(manifold, trunc)
    lattice = point_lattice(manifold, lattice_per_axis)
    rows = [(t, float(np.max(np.abs(kernel.diagonal_excess(t, lattice))))) for t in grid]

    gap = kernel.basis.spectral_gap
    profile = MixingProfile(rows=rows, expected_rate=gap / 2.0 if math.isfinite(gap) else 0.0, fit_window=fit_window)

    selected = [
        (t, value)
        for t, value in rows
        if value > 0 and (fit_window is None or fit_window[0] <= t <= fit_window[1])
    ]
    if len(selected) < 2:
        profile.notes.append("profile vanishes or has fewer than two positive points; no rate fitted")
        return profile

    ts = np.array([t for t, _ in selected])
    logs = np.log(np.array([value for _, value in selected]))
    slope = float(np.polyfit(ts, logs, 1)[0])
    profile.fitted_rate = -slope
    if profile.expected_rate > 0:
        profile.relative_error = abs(profile.fitted_rate - profile.expected_rate) / profile.expected_rate
    logger.info(
        "Mixing profile on %s: fitted rate %.6f vs λ₁/2 = %.6f",
        manifold.label(),
        profile.fitted_rate,
        profile.expected_rate,
    )
    return profile


__all__ = [
    "HeatKernel",
    "HeatKernelValue",
    "MixingProfile",
    "heat_kernel",
    "heat_kernel_mass",
    "mixing_decay_profile",
    "truncation_error_bound",
    "wrapped_gaussian_kernel",
]
