from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core_spectral.eigenbasis import (  # noqa: E402
    SpectralTruncation,
    basis_for,
    default_truncation,
    eigenpairs,
    eigenvalues,
    eval_eigenfunction,
    spectral_basis,
)
from core_spectral.errors import EigenIndexError, SpectralLabError, TruncationError  # noqa: E402
from core_spectral.manifold import (  # noqa: E402
    ManifoldSpec,
    as_points,
    geodesic_distance,
    make_point,
    sphere_point,
    volume,
)
from core_spectral.quadrature import gram_by_quadrature  # noqa: E402

CIRCLE = ManifoldSpec.circle(2 * math.pi)
SPHERE = ManifoldSpec.sphere2()


def test_volume_per_manifold() -> None:
    assert volume(CIRCLE) == pytest.approx(2 * math.pi)
    assert volume(ManifoldSpec.flat_torus([1.0, 1.0])) == 1.0
    assert volume(SPHERE) == pytest.approx(4 * math.pi)


def test_manifold_spec_validation_and_json() -> None:
    with pytest.raises(SpectralLabError):
        ManifoldSpec.circle(0.0)
    with pytest.raises(SpectralLabError):
        ManifoldSpec.flat_torus([1.0, -2.0])
    with pytest.raises(SpectralLabError):
        ManifoldSpec.from_json({"kind": "klein_bottle"})

    torus = ManifoldSpec.from_json({"kind": "flat_torus", "L": [1.0, 2.0]})
    assert torus.dimension == 2
    assert ManifoldSpec.from_json(torus.to_json()) == torus
    assert ManifoldSpec.from_json({"kind": "circle", "L": 6.283185307179586}) == CIRCLE
    assert SPHERE.dimension == 2
    assert SPHERE.coordinate_count == 3


def test_points_are_reduced_and_normalized() -> None:
    assert make_point(CIRCLE, 2 * math.pi + 1.0)[0] == pytest.approx(1.0)
    assert make_point(CIRCLE, -1.0)[0] == pytest.approx(2 * math.pi - 1.0)
    x = make_point(SPHERE, [0.0, 3.0, 4.0])
    assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(SpectralLabError):
        make_point(SPHERE, [0.0, 0.0, 0.0])
    with pytest.raises(SpectralLabError):
        as_points(ManifoldSpec.flat_torus([1.0, 1.0]), [[0.1, 0.2, 0.3]])


def test_circle_eigenpairs_match_fourier_basis() -> None:
    pairs = eigenpairs(CIRCLE, SpectralTruncation(4))
    assert [p.eigenvalue for p in pairs] == pytest.approx([0.0, 1.0, 1.0, 4.0, 4.0])
    assert [p.label for p in pairs] == ["const", "cos(k=1)", "sin(k=1)", "cos(k=2)", "sin(k=2)"]

    x = 0.7
    expected = [
        1 / math.sqrt(2 * math.pi),
        math.cos(x) / math.sqrt(math.pi),
        math.sin(x) / math.sqrt(math.pi),
        math.cos(2 * x) / math.sqrt(math.pi),
        math.sin(2 * x) / math.sqrt(math.pi),
    ]
    values = basis_for(CIRCLE, SpectralTruncation(4)).evaluate(x)[0]
    assert values == pytest.approx(expected, abs=1e-14)


def test_zero_truncation_keeps_constant_only() -> None:
    pairs = eigenpairs(CIRCLE, SpectralTruncation(0))
    assert len(pairs) == 1
    assert pairs[0].eigenvalue == 0.0
    with pytest.raises(TruncationError):
        SpectralTruncation(-1)


def test_eval_eigenfunction_examples() -> None:
    assert eval_eigenfunction(CIRCLE, 1, 0.0) == pytest.approx(1 / math.sqrt(math.pi))
    assert eval_eigenfunction(CIRCLE, 2, 0.0) == pytest.approx(0.0, abs=1e-15)
    for manifold, point in ((CIRCLE, 1.3), (SPHERE, [0.0, 1.0, 0.0])):
        assert eval_eigenfunction(manifold, 0, point) == pytest.approx(volume(manifold) ** -0.5)
    with pytest.raises(EigenIndexError):
        eval_eigenfunction(CIRCLE, 5, 0.0, SpectralTruncation(4))
    with pytest.raises(EigenIndexError):
        eval_eigenfunction(CIRCLE, -1, 0.0)


def test_sphere_first_block_has_multiplicity_three() -> None:
    lambdas = eigenvalues(SPHERE, 9)
    assert lambdas[:4] == pytest.approx([0.0, 2.0, 2.0, 2.0])
    assert lambdas[4:9] == pytest.approx([6.0] * 5)


def test_torus_eigenvalues_are_sorted_and_positive() -> None:
    torus = ManifoldSpec.flat_torus([1.0, 2.0])
    lambdas = eigenvalues(torus, 40)
    assert lambdas[0] == 0.0
    assert np.all(lambdas[1:] > 0)
    assert np.all(np.diff(lambdas) >= 0)
    assert lambdas[1] == pytest.approx(math.pi**2)
    assert lambdas[2] == pytest.approx(math.pi**2)


def test_default_truncations() -> None:
    assert default_truncation(CIRCLE).modes == 128
    assert default_truncation(ManifoldSpec.flat_torus([1.0, 1.0])).modes == 64**2 - 1
    assert default_truncation(SPHERE).modes == 21**2 - 1


@pytest.mark.parametrize(
    "manifold, modes, tolerance",
    [
        (CIRCLE, 20, 1e-8),
        (ManifoldSpec.flat_torus([1.0, 2.0]), 16, 1e-8),
        (SPHERE, 24, 1e-6),
    ],
)
def test_eigenfunctions_are_orthonormal(manifold: ManifoldSpec, modes: int, tolerance: float) -> None:
    gram = gram_by_quadrature(spectral_basis(manifold, modes))
    assert np.max(np.abs(gram - np.eye(modes + 1))) < tolerance


def test_finite_difference_laplacian_converges_at_second_order() -> None:
    n = 3
    lam = float(eigenvalues(CIRCLE, n + 1)[n])
    errors = []
    for points in (64, 128):
        h = 2 * math.pi / points
        grid = np.arange(points) * h
        phi = basis_for(CIRCLE, SpectralTruncation(n)).evaluate(grid)[:, n]
        laplacian = (np.roll(phi, -1) - 2 * phi + np.roll(phi, 1)) / h**2
        errors.append(np.max(np.abs(laplacian + lam * phi)))
    assert math.log2(errors[0] / errors[1]) >= 1.9


def test_geodesic_distance_examples() -> None:
    assert geodesic_distance(CIRCLE, 0.0, math.pi) == pytest.approx(math.pi)
    assert geodesic_distance(CIRCLE, 0.0, 3 * math.pi / 2) == pytest.approx(math.pi / 2)
    north = sphere_point(0.0, 0.0)
    assert geodesic_distance(SPHERE, north, -north) == pytest.approx(math.pi)
    torus = ManifoldSpec.flat_torus([1.0, 1.0])
    assert geodesic_distance(torus, [0.1, 0.1], [0.9, 0.9]) == pytest.approx(math.sqrt(0.08))
