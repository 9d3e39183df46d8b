"""Functions on M stored as finite eigenbasis coefficient vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from core_spectral.eigenbasis import eigenvalues, spectral_basis
from core_spectral.errors import ManifoldMismatchError, NotMeanZeroError, SpectralLabError
from core_spectral.manifold import ManifoldSpec, volume


@dataclass(frozen=True, slots=True, eq=False)
class SpectralFunction:
    """f = Σ_n f_n φ_n with f_0 the coefficient of the constant mode."""

    manifold: ManifoldSpec
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        array = np.array(self.coeffs, dtype=np.float64).reshape(-1)
        if array.size == 0:
            raise SpectralLabError("A spectral function needs at least the constant coefficient")
        if not np.all(np.isfinite(array)):
            raise SpectralLabError("Spectral coefficients must be finite reals")
        array.setflags(write=False)
        object.__setattr__(self, "coeffs", array)

    # -------------------------------------------------------
    @classmethod
    def zero(cls, manifold: ManifoldSpec, size: int = 1) -> "SpectralFunction":
        return cls(manifold, np.zeros(max(size, 1)))

    @classmethod
    def basis_vector(
        cls, manifold: ManifoldSpec, n: int, size: int | None = None, scale: float = 1.0
    ) -> "SpectralFunction":
        length = max(n + 1, size or 0)
        coeffs = np.zeros(length)
        coeffs[n] = scale
        return cls(manifold, coeffs)

    @classmethod
    def from_modes(
        cls, manifold: ManifoldSpec, modes: Mapping[int, float], size: int | None = None
    ) -> "SpectralFunction":
        if any(n < 0 for n in modes):
            raise SpectralLabError("Mode indices must be nonnegative")
        length = max([n + 1 for n in modes] + [size or 1])
        coeffs = np.zeros(length)
        for n, value in modes.items():
            coeffs[n] = value
        return cls(manifold, coeffs)

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> "SpectralFunction":
        manifold = ManifoldSpec.from_json(payload["manifold"])
        modes = {int(entry["n"]): float(entry["c"]) for entry in payload.get("coeffs", [])}
        return cls.from_modes(manifold, modes)

    def to_json(self) -> dict[str, Any]:
        return {
            "manifold": self.manifold.to_json(),
            "coeffs": [{"n": n, "c": float(c)} for n, c in enumerate(self.coeffs) if c != 0.0],
        }

    # -------------------------------------------------------
    @property
    def size(self) -> int:
        return int(self.coeffs.shape[0])

    @property
    def constant_coefficient(self) -> float:
        return float(self.coeffs[0])

    @property
    def mean_zero(self) -> bool:
        return bool(self.coeffs[0] == 0.0)

    def eigenvalues(self) -> np.ndarray:
        return eigenvalues(self.manifold, self.size)

    def integral(self) -> float:
        """∫ f dm = √m₀ · f_0."""

        return math.sqrt(volume(self.manifold)) * float(self.coeffs[0])

    def padded(self, size: int) -> np.ndarray:
        if size <= self.size:
            return self.coeffs[:size]
        out = np.zeros(size)
        out[: self.size] = self.coeffs
        return out

    def truncated(self, modes: int) -> "SpectralFunction":
        """Keep φ_0..φ_modes."""

        return SpectralFunction(self.manifold, self.coeffs[: modes + 1])

    def with_coeffs(self, coeffs: np.ndarray) -> "SpectralFunction":
        return SpectralFunction(self.manifold, coeffs)

    def evaluate(self, points: Any) -> np.ndarray:
        basis = spectral_basis(self.manifold, self.size - 1)
        return basis.evaluate(points) @ self.coeffs

    # -------------------------------------------------------
    def _aligned(self, other: "SpectralFunction") -> tuple[np.ndarray, np.ndarray]:
        require_same_manifold(self, other)
        size = max(self.size, other.size)
        return self.padded(size), other.padded(size)

    def __add__(self, other: "SpectralFunction") -> "SpectralFunction":
        left, right = self._aligned(other)
        return self.with_coeffs(left + right)

    def __sub__(self, other: "SpectralFunction") -> "SpectralFunction":
        left, right = self._aligned(other)
        return self.with_coeffs(left - right)

    def __mul__(self, scalar: float) -> "SpectralFunction":
        return self.with_coeffs(float(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralFunction":
        return self.with_coeffs(-self.coeffs)

    def __repr__(self) -> str:
        nonzero = int(np.count_nonzero(self.coeffs))
        return f"SpectralFunction({self.manifold.label()}, size={self.size}, nonzero={nonzero})"


def require_same_manifold(f: SpectralFunction, g: SpectralFunction) -> None:
    if f.manifold != g.manifold:
        raise ManifoldMismatchError(
            f"Operands live on different manifolds: {f.manifold.label()} vs {g.manifold.label()}"
        )


def require_mean_zero(f: SpectralFunction, operation: str) -> None:
    if not f.mean_zero:
        raise NotMeanZeroError(
            f"{operation} needs a mean-zero function, constant coefficient is {f.constant_coefficient!r}"
        )


__all__ = ["SpectralFunction", "require_mean_zero", "require_same_manifold"]
