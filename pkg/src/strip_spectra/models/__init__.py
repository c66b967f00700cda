"""Pydantic models for run configuration and reports."""

from .config import (
    CurvatureTable,
    GaussTable,
    GeometryConfig,
    GeometryPreset,
    GridConfig,
    Observable,
    ReferenceKind,
    RunConfig,
    SweepConfig,
    ToleranceConfig,
)
from .reports import (
    AsymptoticRate,
    ConvergencePoint,
    ConvergenceReport,
    ExtremaReport,
    GeometryValidation,
    LocationStudy,
    UniformClassReport,
    ValidityReport,
)

__all__ = [
    "CurvatureTable",
    "GaussTable",
    "GeometryConfig",
    "GeometryPreset",
    "GridConfig",
    "Observable",
    "ReferenceKind",
    "RunConfig",
    "SweepConfig",
    "ToleranceConfig",
    "AsymptoticRate",
    "ConvergencePoint",
    "ConvergenceReport",
    "ExtremaReport",
    "GeometryValidation",
    "LocationStudy",
    "UniformClassReport",
    "ValidityReport",
]
