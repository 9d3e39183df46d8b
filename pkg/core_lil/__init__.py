"""Observable families, ellipsoids, cluster clouds and limsup checks."""

from core_lil.cluster_cloud import CloudReport, ClusterCloud, cloud_header, cluster_cloud
from core_lil.ellipsoid import EllipsoidSpec, Membership, ball_membership, ball_radius, ellipsoid_from
from core_lil.observable_basis import ObservableBasis, green_gram, make_basis
from core_lil.running_limsup import LimsupTable, UniformLimsupReport, running_limsup, uniform_limsup_table
from core_lil.target_chase import TargetChaseResult, chase_target
from core_lil.uniform_bound import (
    UniformBoundReport,
    admissible_alpha_floor,
    random_mean_zero_functions,
    uniform_bound_check,
)

__all__ = [
    "CloudReport",
    "ClusterCloud",
    "EllipsoidSpec",
    "LimsupTable",
    "Membership",
    "ObservableBasis",
    "TargetChaseResult",
    "UniformBoundReport",
    "UniformLimsupReport",
    "admissible_alpha_floor",
    "ball_membership",
    "ball_radius",
    "chase_target",
    "cloud_header",
    "cluster_cloud",
    "ellipsoid_from",
    "green_gram",
    "make_basis",
    "random_mean_zero_functions",
    "running_limsup",
    "uniform_bound_check",
    "uniform_limsup_table",
]
