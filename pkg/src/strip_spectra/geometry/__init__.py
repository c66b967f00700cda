"""Intrinsic strip geometry, the Jacobi field f_eps and its explicit bounds."""

from .asymptotics import verify_f_asymptotics
from .bounds import c_epsilon, c_epsilon_value, epsilon_tilde, validate_geometry
from .jacobi import MetricField, flat_metric, solve_jacobi
from .profiles import (
    ConstantCurvature,
    ConstantGauss,
    CurvatureProfile,
    GaussField,
    SineCurvature,
    TabulatedCurvature,
    TabulatedGauss,
)
from .strip import PRESETS, StripGeometry, build_geometry

__all__ = [
    "verify_f_asymptotics",
    "c_epsilon",
    "c_epsilon_value",
    "epsilon_tilde",
    "validate_geometry",
    "MetricField",
    "flat_metric",
    "solve_jacobi",
    "ConstantCurvature",
    "ConstantGauss",
    "CurvatureProfile",
    "GaussField",
    "SineCurvature",
    "TabulatedCurvature",
    "TabulatedGauss",
    "PRESETS",
    "StripGeometry",
    "build_geometry",
]
