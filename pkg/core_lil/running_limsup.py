"""Running maxima of μ_t(f) against the LIL constant σ_f."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np

from core_green.green_operators import lil_sigma
from core_green.spectral_function import SpectralFunction
from core_lil.defaults import harness_thresholds
from core_simulation.sim_config import MIN_NORMALIZATION_TIME
from core_spectral.errors import NormalizationUndefinedError, SpectralLabError

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class LimsupTable:
    sigma: float
    window_start: float
    times: np.ndarray
    running_max: np.ndarray
    ratios: List[float | None] = field(default_factory=list)

    @property
    def final_ratio(self) -> float | None:
        return self.ratios[-1] if self.ratios else None

    def rows(self) -> List[tuple[float, float, float | None]]:
        return [(float(t), float(m), r) for t, m, r in zip(self.times, self.running_max, self.ratios)]

    def within_band(self, band: Sequence[float] | None = None) -> bool:
        low, high = band or harness_thresholds()["limsup"]["band"]
        ratio = self.final_ratio
        return ratio is not None and low <= ratio <= high


def centered_sigma(f: SpectralFunction) -> float:
    """σ of f − m₀⁻¹∫f dm; μ_t only sees the centered part."""

    coeffs = np.array(f.coeffs)
    coeffs[0] = 0.0
    return lil_sigma(f.with_coeffs(coeffs))


def running_limsup(
    times: Sequence[float],
    values: Sequence[float],
    f: SpectralFunction,
    window_start: float | None = None,
) -> LimsupTable:
    """(T, max_{t∈[t₀,T]} μ_t(f), ratio to σ_f) over the checkpoints t ≥ t₀.

    ``values`` are μ_t(f) at ``times``. The ratio is None when σ_f = 0.
    """

    t0 = float(harness_thresholds()["limsup"]["window_start"] if window_start is None else window_start)
    if t0 < MIN_NORMALIZATION_TIME:
        raise NormalizationUndefinedError(f"Running limsup window must start at t₀ ≥ 3, got {t0}")
    ts = np.asarray(times, dtype=np.float64)
    mus = np.asarray(values, dtype=np.float64)
    if ts.shape != mus.shape:
        raise SpectralLabError("times and μ values must have the same length")

    window = ts >= t0
    running = np.maximum.accumulate(mus[window]) if np.any(window) else np.zeros(0)
    sigma = centered_sigma(f)
    ratios: List[float | None] = [float(m / sigma) if sigma > 0 else None for m in running]
    return LimsupTable(sigma=sigma, window_start=t0, times=ts[window], running_max=running, ratios=ratios)


@dataclass(slots=True)
class UniformLimsupReport:
    tables: List[LimsupTable]

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "observable": k + 1,
                "sigma": table.sigma,
                "final_max": float(table.running_max[-1]) if table.running_max.size else None,
                "ratio": table.final_ratio,
                "within_band": table.within_band(),
            }
            for k, table in enumerate(self.tables)
        ]

    def all_within_band(self, band: Sequence[float] | None = None) -> bool:
        return all(table.within_band(band) for table in self.tables if table.sigma > 0)


def uniform_limsup_table(
    times: Sequence[float],
    mu: np.ndarray,
    observables: Sequence[SpectralFunction],
    window_start: float | None = None,
) -> UniformLimsupReport:
    """Running-max ratios for several observables of the same path side by side.

    ``mu`` has one column per observable. One path serves all observables at
    once, which is the simultaneous form of the limsup law.
    """

    matrix = np.asarray(mu, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != len(observables):
        raise SpectralLabError("μ matrix needs one column per observable")
    tables = [running_limsup(times, matrix[:, k], f, window_start) for k, f in enumerate(observables)]
    return UniformLimsupReport(tables=tables)


__all__ = ["LimsupTable", "UniformLimsupReport", "centered_sigma", "running_limsup", "uniform_limsup_table"]
