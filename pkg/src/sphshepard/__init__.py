"""Local partition-of-unity interpolation of scattered data on the unit sphere."""

from .datasets import (
    PointSet,
    load_csv,
    random_uniform_sphere,
    spiral_points,
    split_cross_validation,
    synthetic_geomagnetic,
    test_function,
    write_csv,
)
from .errors import ConfigError, DataError, SolveError
from .harmonics import sh_basis, sh_dim
from .kernels import InverseMultiquadric, eval_kernel, kernel_matrix, make_kernel
from .localfit import LocalInterpolant, build_local_interpolant, eval_local
from .metrics import ErrorReport, error_report, rrmse
from .shepard import ShepardConfig, ShepardModel, evaluate, fit, weights
from .sphere import SphericalCap, cap_contains, geodesic_distance, normalize
from .zones import NeighborSet, ZoneIndex, build_zones, compute_delta, nearest_m, query_cap

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataError",
    "ErrorReport",
    "InverseMultiquadric",
    "LocalInterpolant",
    "NeighborSet",
    "PointSet",
    "ShepardConfig",
    "ShepardModel",
    "SolveError",
    "SphericalCap",
    "ZoneIndex",
    "build_local_interpolant",
    "build_zones",
    "cap_contains",
    "compute_delta",
    "error_report",
    "eval_kernel",
    "eval_local",
    "evaluate",
    "fit",
    "geodesic_distance",
    "kernel_matrix",
    "load_csv",
    "make_kernel",
    "nearest_m",
    "normalize",
    "query_cap",
    "random_uniform_sphere",
    "rrmse",
    "sh_basis",
    "sh_dim",
    "spiral_points",
    "split_cross_validation",
    "synthetic_geomagnetic",
    "test_function",
    "weights",
    "write_csv",
]
