"""The ellipsoid E = {z : Σ a_ij z_i z_j ≤ 1} spanned by observables f_1..f_n.

With B the Green–Gram matrix (f_i, G f_j), a = (m₀/2)·B⁻¹. For the
default basis B = I and E is the ball of radius √(2/m₀).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from core_green.spectral_function import SpectralFunction, require_mean_zero
from core_lil.defaults import harness_thresholds
from core_lil.observable_basis import green_gram
from core_spectral.errors import ManifoldMismatchError, SingularGramError, SpectralLabError
from core_spectral.manifold import ManifoldSpec, volume

logger = logging.getLogger(__name__)


def ball_radius(manifold: ManifoldSpec) -> float:
    return math.sqrt(2.0 / volume(manifold))


@dataclass(frozen=True, slots=True, eq=False)
class EllipsoidSpec:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.matrix, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise SpectralLabError(f"Ellipsoid matrix must be square and nonempty, got shape {a.shape}")
        tolerance = float(harness_thresholds()["boundary"]["tolerance"])
        if np.max(np.abs(a - a.T)) > tolerance * max(1.0, float(np.max(np.abs(a)))):
            raise SpectralLabError("Ellipsoid matrix is not symmetric")
        a = 0.5 * (a + a.T)
        if np.min(np.linalg.eigvalsh(a)) <= 0:
            raise SpectralLabError("Ellipsoid matrix is not positive definite")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @classmethod
    def ball(cls, n: int, radius: float) -> "EllipsoidSpec":
        return cls(np.eye(n) / radius**2)

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    def form(self, v: np.ndarray) -> np.ndarray | float:
        """Σ a_ij v_i v_j for one vector or a stack of vectors (…, n)."""

        vectors = np.asarray(v, dtype=np.float64)
        if vectors.shape[-1] != self.n:
            raise SpectralLabError(f"Vector of dimension {vectors.shape[-1]} for an ellipsoid in ℝ^{self.n}")
        values = np.einsum("...i,ij,...j->...", vectors, self.matrix, vectors)
        return float(values) if values.ndim == 0 else values


@dataclass(frozen=True, slots=True)
class Membership:
    form_value: float
    member: bool


def ellipsoid_from(functions: Sequence[SpectralFunction], manifold: ManifoldSpec) -> EllipsoidSpec:
    if not functions:
        raise SpectralLabError("An ellipsoid needs at least one observable")
    for f in functions:
        if f.manifold != manifold:
            raise ManifoldMismatchError(f"Observable on {f.manifold.label()} for {manifold.label()}")
        require_mean_zero(f, "Ellipsoid observable")

    gram = green_gram(functions)
    limit = float(harness_thresholds()["boundary"]["max_condition"])
    condition = float(np.linalg.cond(gram))
    if not math.isfinite(condition) or condition > limit:
        raise SingularGramError(
            f"Green–Gram matrix has condition number {condition:.3e} > {limit:.1e}; "
            "the observables are (nearly) linearly dependent"
        )
    matrix = volume(manifold) / 2.0 * np.linalg.inv(gram)
    logger.debug("Ellipsoid in ℝ^%d on %s, cond(B)=%.3e", len(functions), manifold.label(), condition)
    return EllipsoidSpec(matrix)


def ball_membership(v: Sequence[float], e: EllipsoidSpec) -> Membership:
    """Form value and the closed predicate form ≤ 1 (boundary counts as member)."""

    tolerance = float(harness_thresholds()["boundary"]["tolerance"])
    value = float(e.form(np.asarray(v, dtype=np.float64)))
    return Membership(form_value=value, member=value <= 1.0 + tolerance)


__all__ = ["EllipsoidSpec", "Membership", "ball_membership", "ball_radius", "ellipsoid_from"]
