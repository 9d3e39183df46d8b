from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core_green.green_operators import lil_sigma  # noqa: E402
from core_green.spectral_function import SpectralFunction  # noqa: E402
from core_lil.cluster_cloud import cloud_header, cluster_cloud  # noqa: E402
from core_lil.ellipsoid import EllipsoidSpec, ball_membership, ball_radius, ellipsoid_from  # noqa: E402
from core_lil.observable_basis import green_gram, make_basis  # noqa: E402
from core_lil.running_limsup import running_limsup, uniform_limsup_table  # noqa: E402
from core_lil.target_chase import chase_target  # noqa: E402
from core_lil.uniform_bound import (  # noqa: E402
    admissible_alpha_floor,
    random_mean_zero_functions,
    uniform_bound_check,
)
from core_spectral.eigenbasis import SpectralTruncation, eigenvalues  # noqa: E402
from core_spectral.errors import (  # noqa: E402
    AdmissibilityError,
    NormalizationUndefinedError,
    SingularGramError,
    SpectralLabError,
    TargetOutsideBallError,
    TruncationError,
)
from core_spectral.manifold import ManifoldSpec  # noqa: E402

CIRCLE = ManifoldSpec.circle(2 * math.pi)
RADIUS = math.sqrt(1 / math.pi)


def _ball(n: int):
    return ellipsoid_from(make_basis(CIRCLE, n).functions, CIRCLE)


# ===========================================================
# Observable basis and ellipsoid
# ===========================================================


def test_make_basis_on_the_circle() -> None:
    basis = make_basis(CIRCLE, 2)
    f1, f2 = basis.functions
    assert list(f1.coeffs) == pytest.approx([0.0, 1 / math.sqrt(2)])
    assert list(f2.coeffs) == pytest.approx([0.0, 0.0, 1 / math.sqrt(2)])
    assert basis.labels() == ["f1", "f2"]
    assert lil_sigma(make_basis(CIRCLE, 1).functions[0]) == pytest.approx(ball_radius(CIRCLE))
    with pytest.raises(TruncationError):
        make_basis(CIRCLE, 5, SpectralTruncation(4))
    with pytest.raises(SpectralLabError):
        make_basis(CIRCLE, 0)


@pytest.mark.parametrize("manifold", [CIRCLE, ManifoldSpec.flat_torus([1.0, 2.0]), ManifoldSpec.sphere2()])
def test_green_gram_of_default_basis_is_identity(manifold: ManifoldSpec) -> None:
    gram = green_gram(make_basis(manifold, 32).functions)
    assert np.max(np.abs(gram - np.eye(32))) <= 1e-12


def test_default_ellipsoid_is_the_ball() -> None:
    ellipsoid = _ball(2)
    assert np.allclose(ellipsoid.matrix, np.pi * np.eye(2), rtol=0, atol=1e-12)
    center = ball_membership([0.0, 0.0], ellipsoid)
    assert center.member and center.form_value == 0.0
    boundary = ball_membership([RADIUS, 0.0], ellipsoid)
    assert boundary.member
    assert boundary.form_value == pytest.approx(1.0, abs=1e-12)
    assert not ball_membership([0.6, 0.0], ellipsoid).member
    with pytest.raises(SpectralLabError):
        ball_membership([0.1, 0.1, 0.1], ellipsoid)


def test_ball_membership_matches_euclidean_norm() -> None:
    ellipsoid = _ball(3)
    rng = np.random.default_rng(9)
    for v in rng.uniform(-0.7, 0.7, (200, 3)):
        norm = float(np.linalg.norm(v))
        if abs(norm - RADIUS) > 1e-9:
            assert ball_membership(v, ellipsoid).member == (norm <= RADIUS)


def test_dependent_observables_are_rejected() -> None:
    phi1 = SpectralFunction.basis_vector(CIRCLE, 1)
    with pytest.raises(SingularGramError):
        ellipsoid_from([phi1, phi1], CIRCLE)
    with pytest.raises(SpectralLabError):
        ellipsoid_from([], CIRCLE)
    with pytest.raises(SpectralLabError):
        EllipsoidSpec(np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(SpectralLabError):
        EllipsoidSpec(np.array([[1.0, 0.0], [0.0, -1.0]]))


def test_scaled_observables_transform_the_ellipsoid() -> None:
    f1, f2 = make_basis(CIRCLE, 2).functions
    scaled = ellipsoid_from([2.0 * f1, f2], CIRCLE)
    gram = np.diag([4.0, 1.0])
    expected = (2 * math.pi / 2) * np.linalg.inv(gram)
    assert np.allclose(scaled.matrix, expected, rtol=1e-12, atol=0)

    original = _ball(2)
    rng = np.random.default_rng(21)
    for v in rng.uniform(-0.7, 0.7, (100, 2)):
        base = ball_membership(v, original)
        moved = ball_membership([2.0 * v[0], v[1]], scaled)
        assert moved.form_value == pytest.approx(base.form_value, rel=1e-12)
        if abs(base.form_value - 1.0) > 1e-9:
            assert moved.member == base.member


# ===========================================================
# Cluster clouds
# ===========================================================


def test_cloud_of_zero_observable_sits_at_the_origin() -> None:
    times = [3.0, 4.0, 5.0]
    report = cluster_cloud(times, np.zeros((3, 2)), _ball(2))
    assert np.all(report.form_values == 0.0)
    assert report.all_contained
    assert report.covered_bins == 0
    rows = list(report.rows())
    assert rows[0] == [3.0, 0.0, 0.0, 0.0, 1]
    assert cloud_header(2) == ["t", "v1", "v2", "form_value", "member"]


def test_cloud_containment_and_coverage() -> None:
    angles = (np.arange(16) + 0.5) * 2 * math.pi / 16
    ring = 0.5 * RADIUS * np.column_stack([np.cos(angles), np.sin(angles)])
    outlier = np.array([[2.0 * RADIUS, 0.0]])
    vectors = np.vstack([ring, outlier])
    times = 3.0 * 1.05 ** np.arange(17)
    report = cluster_cloud(times, vectors, _ball(2), inflation=0.25, angular_bins=16, radial_floor=0.2)
    assert report.covered_bins == 16
    assert not report.all_contained
    assert report.containment_fraction == pytest.approx(16 / 17)

    late = cluster_cloud(times, vectors[::-1], _ball(2), t_min=times[1])
    assert late.all_contained


def test_cloud_rows_label_boundary_points_like_ball_membership() -> None:
    unit = EllipsoidSpec(np.eye(2))
    vectors = np.array([[0.5, 0.0], [1.0 + 2e-13, 0.0], [1.0 + 1e-11, 0.0]])
    report = cluster_cloud([3.0, 4.0, 5.0], vectors, unit)
    flags = [row[-1] for row in report.rows()]
    assert flags == [1, 1, 0]
    assert flags == [int(ball_membership(v, unit).member) for v in vectors]


def test_cloud_rejects_invalid_times() -> None:
    with pytest.raises(SpectralLabError):
        cluster_cloud([2.0, 4.0], np.zeros((2, 2)), _ball(2))
    with pytest.raises(SpectralLabError):
        cluster_cloud([4.0, 4.0], np.zeros((2, 2)), _ball(2))
    with pytest.raises(SpectralLabError):
        cluster_cloud([4.0], np.zeros((1, 3)), _ball(2))


# ===========================================================
# Running limsup
# ===========================================================


def test_running_limsup_of_constant_observable() -> None:
    constant = SpectralFunction.basis_vector(CIRCLE, 0, scale=3.0)
    table = running_limsup([50.0, 100.0, 200.0], [0.0, 0.0, 0.0], constant, window_start=100.0)
    assert list(table.running_max) == [0.0, 0.0]
    assert table.sigma == 0.0
    assert table.ratios == [None, None]
    assert not table.within_band()


def test_running_limsup_is_monotone_with_sigma_ratio() -> None:
    phi1 = SpectralFunction.basis_vector(CIRCLE, 1)
    times = 3.0 * 1.05 ** np.arange(200)
    values = np.sin(np.arange(200) / 7.0)
    table = running_limsup(times, values, phi1, window_start=100.0)
    assert np.all(np.diff(table.running_max) >= 0)
    assert table.times[0] >= 100.0
    assert table.sigma == pytest.approx(math.sqrt(2 / math.pi))
    assert table.final_ratio == pytest.approx(table.running_max[-1] / math.sqrt(2 / math.pi))
    with pytest.raises(NormalizationUndefinedError):
        running_limsup(times, values, phi1, window_start=2.0)


def test_uniform_limsup_table_covers_all_observables() -> None:
    basis = make_basis(CIRCLE, 3)
    times = 3.0 * 1.05 ** np.arange(120)
    mu = np.column_stack([np.full(120, 0.4), np.full(120, 0.1), np.full(120, 2.0)])
    report = uniform_limsup_table(times, mu, basis.functions, window_start=100.0)
    flags = [row["within_band"] for row in report.rows()]
    assert flags == [True, False, False]
    assert not report.all_within_band()
    with pytest.raises(SpectralLabError):
        uniform_limsup_table(times, mu[:, :2], basis.functions)


# ===========================================================
# Target chasing
# ===========================================================


def test_chase_target_records_increasing_times() -> None:
    times = [3.0, 4.0, 5.0, 6.0]
    vectors = np.array([[0.05, 0.3], [0.01, 0.01], [0.2, 0.2], [0.0, 0.0]])
    result = chase_target(times, vectors, [0.0, 0.0], _ball(2), [0.1, 0.05], budget=10.0)
    assert result.success
    assert result.status == "reached"
    assert result.times == [3.0, 4.0]
    assert result.errors[0] == pytest.approx(0.05)
    assert all(error < eps for error, eps in zip(result.errors, result.tolerances))


def test_chase_target_reports_budget_exhaustion() -> None:
    times = [3.0, 4.0, 5.0, 6.0]
    vectors = np.array([[0.05, 0.3], [0.01, 0.01], [0.2, 0.2], [0.0, 0.0]])
    result = chase_target(times, vectors, [0.0, 0.0], _ball(2), [0.1, 0.05], budget=3.5)
    assert not result.success
    assert result.status == "budget exhausted at k=2"
    assert result.times == [3.0]
    assert result.budget_consumed == 3.0


def test_chase_target_preconditions() -> None:
    ball = _ball(1)
    with pytest.raises(TargetOutsideBallError):
        chase_target([3.0], [[0.0]], [RADIUS * 1.01], ball, [0.1], budget=10.0)
    with pytest.raises(TargetOutsideBallError):
        chase_target([3.0], [[0.0]], [0.6], ball, [0.1], budget=10.0)
    with pytest.raises(SpectralLabError):
        chase_target([3.0], [[0.0, 0.0]], [0.0, 0.0], _ball(2), [0.05, 0.1], budget=10.0)
    with pytest.raises(SpectralLabError):
        chase_target([3.0], [[0.0]], [0.0], ball, [0.1], budget=math.inf)


# ===========================================================
# Uniform bound surrogate
# ===========================================================


def test_admissible_alpha_floor() -> None:
    assert admissible_alpha_floor(CIRCLE) == 0.5
    assert admissible_alpha_floor(ManifoldSpec.sphere2()) == 1.0
    assert admissible_alpha_floor(ManifoldSpec.flat_torus([1.0, 1.0, 1.0])) == 1.5


def test_uniform_bound_surrogate_holds_and_scales() -> None:
    rng = np.random.default_rng(13)
    modes = 50
    trunc = SpectralTruncation(modes)
    mode_mu = rng.standard_normal((40, modes))
    samples = random_mean_zero_functions(CIRCLE, modes, 50, rng)
    report = uniform_bound_check(mode_mu, CIRCLE, 1.0, samples, trunc)
    assert report.passed
    assert report.max_ratio <= 1.0 + 1e-10
    assert report.as_dict()["passed"] is True

    doubled = uniform_bound_check(mode_mu, CIRCLE, 1.0, [2.0 * f for f in samples], trunc)
    assert doubled.max_ratio == pytest.approx(report.max_ratio, rel=1e-12)

    lam1 = float(eigenvalues(CIRCLE, 2)[1])
    unit = SpectralFunction.basis_vector(CIRCLE, 1, size=modes + 1, scale=lam1**-0.5)
    assert np.all(np.abs(mode_mu @ unit.coeffs[1:]) <= report.empirical_constant)

    with pytest.raises(AdmissibilityError):
        uniform_bound_check(mode_mu, CIRCLE, 0.5, samples, trunc)
    with pytest.raises(SpectralLabError):
        uniform_bound_check(mode_mu[:, :10], CIRCLE, 1.0, samples, trunc)
