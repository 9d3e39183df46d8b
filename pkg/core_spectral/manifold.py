"""Concrete compact manifolds: circle, flat torus and the unit 2-sphere.

Points are numpy arrays: angles in [0, L_i) per axis for the circle and
the torus, unit 3-vectors for the sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Mapping, Sequence

import numpy as np

from core_spectral.errors import SpectralLabError


class ManifoldKind(Enum):
    CIRCLE = "circle"
    FLAT_TORUS = "torus"
    SPHERE2 = "sphere"


_KIND_ALIASES = {
    "circle": ManifoldKind.CIRCLE,
    "torus": ManifoldKind.FLAT_TORUS,
    "flat_torus": ManifoldKind.FLAT_TORUS,
    "sphere": ManifoldKind.SPHERE2,
    "sphere2": ManifoldKind.SPHERE2,
}


@dataclass(frozen=True, slots=True)
class ManifoldSpec:
    """Which compact manifold, with its side lengths (empty for the sphere)."""

    kind: ManifoldKind
    lengths: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is ManifoldKind.SPHERE2:
            if self.lengths:
                raise SpectralLabError("Sphere2 has fixed unit radius and takes no lengths")
            return
        if not self.lengths:
            raise SpectralLabError(f"{self.kind.value} requires at least one side length")
        if self.kind is ManifoldKind.CIRCLE and len(self.lengths) != 1:
            raise SpectralLabError("Circle takes exactly one circumference")
        for length in self.lengths:
            if not math.isfinite(length) or length <= 0:
                raise SpectralLabError(f"Side lengths must be finite and positive, got {length}")

    # -------------------------------------------------------
    @classmethod
    def circle(cls, circumference: float = 2 * math.pi) -> "ManifoldSpec":
        return cls(ManifoldKind.CIRCLE, (float(circumference),))

    @classmethod
    def flat_torus(cls, lengths: Sequence[float]) -> "ManifoldSpec":
        return cls(ManifoldKind.FLAT_TORUS, tuple(float(length) for length in lengths))

    @classmethod
    def sphere2(cls) -> "ManifoldSpec":
        return cls(ManifoldKind.SPHERE2)

    # -------------------------------------------------------
    @property
    def dimension(self) -> int:
        if self.kind is ManifoldKind.SPHERE2:
            return 2
        return len(self.lengths)

    @property
    def coordinate_count(self) -> int:
        """Number of coordinates stored per point."""

        if self.kind is ManifoldKind.SPHERE2:
            return 3
        return len(self.lengths)

    @property
    def is_periodic_box(self) -> bool:
        return self.kind is not ManifoldKind.SPHERE2

    def to_json(self) -> dict[str, Any]:
        if self.kind is ManifoldKind.CIRCLE:
            return {"kind": "circle", "L": self.lengths[0]}
        if self.kind is ManifoldKind.FLAT_TORUS:
            return {"kind": "torus", "L": list(self.lengths)}
        return {"kind": "sphere"}

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> "ManifoldSpec":
        raw_kind = str(payload.get("kind", "")).lower()
        kind = _KIND_ALIASES.get(raw_kind)
        if kind is None:
            raise SpectralLabError(f"Unknown manifold kind: {payload.get('kind')!r}")
        if kind is ManifoldKind.SPHERE2:
            return cls.sphere2()
        lengths = payload.get("L", 2 * math.pi)
        if kind is ManifoldKind.CIRCLE:
            return cls.circle(float(lengths))
        if isinstance(lengths, (int, float)):
            raise SpectralLabError("Torus side lengths must be given as a list")
        return cls.flat_torus(lengths)

    def label(self) -> str:
        if self.kind is ManifoldKind.SPHERE2:
            return "Sphere2"
        sides = ",".join(f"{length:g}" for length in self.lengths)
        return f"{'Circle' if self.kind is ManifoldKind.CIRCLE else 'FlatTorus'}({sides})"


def volume(manifold: ManifoldSpec) -> float:
    """Total Riemannian volume m₀ = m(M)."""

    if manifold.kind is ManifoldKind.SPHERE2:
        return 4.0 * math.pi
    return float(math.prod(manifold.lengths))


def as_points(manifold: ManifoldSpec, coords: Any) -> np.ndarray:
    """Normalize coordinates to an array of shape (P, coordinate_count).

    Circle and torus coordinates are reduced modulo the side lengths; sphere
    vectors are projected to unit norm.
    """

    array = np.asarray(coords, dtype=np.float64)
    width = manifold.coordinate_count
    if array.ndim == 0:
        array = array.reshape(1, 1)
    elif array.ndim == 1:
        array = array.reshape(-1, width) if array.size % width == 0 and width > 1 else array.reshape(-1, 1)
    if array.shape[-1] != width:
        raise SpectralLabError(
            f"Points on {manifold.label()} need {width} coordinates, got shape {array.shape}"
        )
    if manifold.is_periodic_box:
        lengths = np.asarray(manifold.lengths)
        reduced = np.mod(array, lengths)
        # np.mod can round tiny negatives up to exactly L
        return np.where(reduced >= lengths, 0.0, reduced)
    norms = np.linalg.norm(array, axis=-1, keepdims=True)
    if np.any(norms == 0):
        raise SpectralLabError("Sphere points must be nonzero vectors")
    return array / norms


def make_point(manifold: ManifoldSpec, coords: Any) -> np.ndarray:
    """A single point of ``manifold`` as a 1-D coordinate array."""

    points = as_points(manifold, coords)
    if points.shape[0] != 1:
        raise SpectralLabError(f"Expected one point, got {points.shape[0]}")
    return points[0]


def sphere_point(colatitude: float, longitude: float) -> np.ndarray:
    sin_theta = math.sin(colatitude)
    return np.array(
        [sin_theta * math.cos(longitude), sin_theta * math.sin(longitude), math.cos(colatitude)]
    )


def geodesic_distance(manifold: ManifoldSpec, x: Any, y: Any) -> float | np.ndarray:
    """Riemannian distance: wrapped Euclidean on boxes, great-circle on the sphere."""

    xs = as_points(manifold, x)
    ys = as_points(manifold, y)
    if manifold.is_periodic_box:
        lengths = np.asarray(manifold.lengths)
        delta = np.abs(xs - ys)
        wrapped = np.minimum(delta, lengths - delta)
        distances = np.sqrt(np.sum(wrapped**2, axis=-1))
    else:
        cosine = np.clip(np.sum(xs * ys, axis=-1), -1.0, 1.0)
        distances = np.arccos(cosine)
    if distances.shape == (1,):
        return float(distances[0])
    return distances


__all__ = [
    "ManifoldKind",
    "ManifoldSpec",
    "as_points",
    "geodesic_distance",
    "make_point",
    "sphere_point",
    "volume",
]
