"""Rigid spherical hypersurfaces in C^2: parameters, defining functions,
flow maps and zero-curvature certificates, all on truncated power series."""

from .series import MultiSeries, SeriesError, compose, solve_implicit
from .parameters import (
    NormalFormCoeffs,
    StantonParams,
    TwistParams,
    coeffs_to_twist,
    default_root_index,
    stanton_reachable,
    stanton_to_coeffs,
    stanton_to_twist,
    twist_to_coeffs,
)
from .surfaces import SurfaceSeries, defining_value, expand_surface, extract_coeffs, solve_v
from .maps import (
    MapJet,
    NormalizationData,
    VectorFieldParams,
    integrate_system,
    normalization_ode_solve,
    stanton_map,
    system_residual,
    twisted_map,
)
from .curvature import CurvatureReport, curvature_residual, log_laplacian

__version__ = "0.1.0"

__all__ = [
    "MultiSeries",
    "SeriesError",
    "compose",
    "solve_implicit",
    "NormalFormCoeffs",
    "StantonParams",
    "TwistParams",
    "coeffs_to_twist",
    "default_root_index",
    "stanton_reachable",
    "stanton_to_coeffs",
    "stanton_to_twist",
    "twist_to_coeffs",
    "SurfaceSeries",
    "defining_value",
    "expand_surface",
    "extract_coeffs",
    "solve_v",
    "MapJet",
    "NormalizationData",
    "VectorFieldParams",
    "integrate_system",
    "normalization_ode_solve",
    "stanton_map",
    "system_residual",
    "twisted_map",
    "CurvatureReport",
    "curvature_residual",
    "log_laplacian",
]
