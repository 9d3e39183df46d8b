"""Observable families f_k = √(λ_k/2) φ_k, orthonormal under the Green form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from core_green.green_operators import green_quadratic_form
from core_green.spectral_function import SpectralFunction
from core_spectral.eigenbasis import SpectralTruncation, basis_for, default_truncation
from core_spectral.errors import SpectralLabError, TruncationError
from core_spectral.manifold import ManifoldSpec


@dataclass(frozen=True, slots=True, eq=False)
class ObservableBasis:
    manifold: ManifoldSpec
    functions: Tuple[SpectralFunction, ...]

    @property
    def n(self) -> int:
        return len(self.functions)

    def labels(self) -> list[str]:
        return [f"f{k + 1}" for k in range(self.n)]


def make_basis(manifold: ManifoldSpec, n: int, trunc: SpectralTruncation | None = None) -> ObservableBasis:
    if n < 1:
        raise SpectralLabError(f"An observable basis needs n ≥ 1, got {n}")
    truncation = trunc or default_truncation(manifold)
    if n > truncation.modes:
        raise TruncationError(f"n={n} exceeds the {truncation.modes} nonconstant modes available")
    lambdas = basis_for(manifold, truncation).eigenvalues
    functions = tuple(
        SpectralFunction.basis_vector(manifold, k, scale=math.sqrt(lambdas[k] / 2.0)) for k in range(1, n + 1)
    )
    return ObservableBasis(manifold=manifold, functions=functions)


def green_gram(functions: Sequence[SpectralFunction]) -> np.ndarray:
    """B_ij = (f_i, G f_j) by polarization of the quadratic form.

    B_ij = ¼ [Q(f_i + f_j) − Q(f_i − f_j)],  Q(f) = (Gf, f).
    """

    n = len(functions)
    gram = np.empty((n, n))
    for i in range(n):
        gram[i, i] = green_quadratic_form(functions[i])
        for j in range(i + 1, n):
            value = 0.25 * (
                green_quadratic_form(functions[i] + functions[j]) - green_quadratic_form(functions[i] - functions[j])
            )
            gram[i, j] = gram[j, i] = value
    return gram


__all__ = ["ObservableBasis", "green_gram", "make_basis"]
