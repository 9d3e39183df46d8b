"""Cluster clouds v_{n,t} = (μ_t(f_1), …, μ_t(f_n)) and their coverage statistics.

Containment and coverage are soft empirical proxies for the cluster set
being the ellipsoid: points should stay inside a slightly inflated
ellipsoid, and over time reach most angular directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Sequence

import numpy as np

from core_lil.defaults import harness_thresholds
from core_lil.ellipsoid import EllipsoidSpec
from core_simulation.sim_config import MIN_NORMALIZATION_TIME
from core_spectral.errors import SpectralLabError


@dataclass(frozen=True, slots=True, eq=False)
class ClusterCloud:
    times: np.ndarray
    vectors: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=np.float64)
        vectors = np.asarray(self.vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[0] != times.shape[0]:
            raise SpectralLabError("Cloud vectors must have one row per checkpoint time")
        if times.size and np.min(times) < MIN_NORMALIZATION_TIME * (1.0 - 1e-12):
            raise SpectralLabError(f"Cloud checkpoints must satisfy t ≥ {MIN_NORMALIZATION_TIME:g}")
        if np.any(np.diff(times) <= 0):
            raise SpectralLabError("Cloud checkpoint times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "vectors", vectors)

    @property
    def n(self) -> int:
        return int(self.vectors.shape[1])


@dataclass(slots=True)
class CloudReport:
    cloud: ClusterCloud
    form_values: np.ndarray
    inflation: float
    t_min: float
    containment_fraction: float
    all_contained: bool
    angular_bins: int
    covered_bins: int
    radial_floor: float
    boundary_tolerance: float = 0.0

    def summary(self) -> Dict[str, Any]:
        return {
            "checkpoints": int(self.cloud.times.size),
            "n": self.cloud.n,
            "inflation": self.inflation,
            "t_min": self.t_min,
            "containment_fraction": self.containment_fraction,
            "all_contained": self.all_contained,
            "angular_bins": self.angular_bins,
            "covered_bins": self.covered_bins,
            "radial_floor": self.radial_floor,
        }

    def rows(self) -> Iterator[List[Any]]:
        """(t, v_1..v_n, form_value, member) per checkpoint."""

        for t, v, form in zip(self.cloud.times, self.cloud.vectors, self.form_values):
            yield [float(t)] + [float(x) for x in v] + [float(form), int(form <= 1.0 + self.boundary_tolerance)]


def cluster_cloud(
    times: Sequence[float],
    vectors: np.ndarray,
    ellipsoid: EllipsoidSpec,
    *,
    t_min: float | None = None,
    inflation: float | None = None,
    angular_bins: int | None = None,
    radial_floor: float | None = None,
) -> CloudReport:
    """Assemble the cloud and measure containment and angular coverage.

    Containment counts checkpoints with t ≥ t_min whose form value is at most
    (1 + inflation)². Coverage bins the angle of (v_1, v_2) in the ellipsoid's
    own coordinates and counts bins holding a point of normalized radius
    √form ≥ radial_floor.
    """

    settings = harness_thresholds()["cloud"]
    inflation = float(settings["inflation"] if inflation is None else inflation)
    bins = int(settings["angular_bins"] if angular_bins is None else angular_bins)
    floor = float(settings["radial_floor"] if radial_floor is None else radial_floor)

    cloud = ClusterCloud(times=np.asarray(times), vectors=np.asarray(vectors))
    if cloud.n != ellipsoid.n:
        raise SpectralLabError(f"Cloud in ℝ^{cloud.n} for an ellipsoid in ℝ^{ellipsoid.n}")
    form_values = np.asarray(ellipsoid.form(cloud.vectors), dtype=np.float64).reshape(-1)
    start = MIN_NORMALIZATION_TIME if t_min is None else float(t_min)

    window = cloud.times >= start
    contained = form_values[window] <= (1.0 + inflation) ** 2
    fraction = float(np.mean(contained)) if contained.size else 1.0

    # whiten so the ellipsoid becomes the unit ball before measuring angles
    whitened = cloud.vectors @ np.linalg.cholesky(ellipsoid.matrix)
    if cloud.n >= 2:
        angles = np.arctan2(whitened[:, 1], whitened[:, 0])
    else:
        angles = np.where(whitened[:, 0] >= 0, 0.0, math.pi)
    far = np.sqrt(np.maximum(form_values, 0.0)) >= floor
    indices = np.floor((angles[far] + math.pi) / (2.0 * math.pi) * bins).astype(np.int64) % bins
    covered = int(np.unique(indices).size)

    return CloudReport(
        cloud=cloud,
        form_values=form_values,
        inflation=inflation,
        t_min=start,
        containment_fraction=fraction,
        all_contained=bool(np.all(contained)),
        angular_bins=bins,
        covered_bins=covered,
        radial_floor=floor,
        boundary_tolerance=float(harness_thresholds()["boundary"]["tolerance"]),
    )


def cloud_header(n: int) -> List[str]:
    return ["t"] + [f"v{k + 1}" for k in range(n)] + ["form_value", "member"]


__all__ = ["CloudReport", "ClusterCloud", "cloud_header", "cluster_cloud"]
