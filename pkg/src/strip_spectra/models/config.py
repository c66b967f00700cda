"""User-facing Pydantic models for run configuration."""

import math
from enum import Enum
from pathlib import Path
from typing import Annotated

from pydantic import BaseModel, Field, field_validator, model_validator


class GeometryPreset(str, Enum):
    """Named strip geometries."""

    FLAT_LINE = "flat-line"
    FLAT_ARC = "flat-arc"
    FLAT_SINE = "flat-sine"
    SPHERE_GEODESIC = "sphere-geodesic"
    HYPERBOLIC_GEODESIC = "hyperbolic-geodesic"
    SPHERE_CIRCLE = "sphere-circle"


class Observable(str, Enum):
    """Quantities tracked by an epsilon sweep."""

    EIGENVALUE_ERROR = "eigenvalue_error"
    L2_ERROR = "l2_error"
    SUP_ERROR = "sup_error"
    SUP_GRAD_S_ERROR = "sup_grad_s_error"
    RESOLVENT_GAP = "resolvent_gap"


class ReferenceKind(str, Enum):
    """What sweep errors are measured against."""

    DISCRETE = "discrete"
    ANALYTIC = "analytic"


class CurvatureTable(BaseModel):
    """Sampled curvature kappa(s), interpolated by a cubic spline."""

    s: Annotated[list[float], Field(min_length=4)]
    values: list[float]

    @model_validator(mode="after")
    def check_lengths(self) -> "CurvatureTable":
        if len(self.s) != len(self.values):
            raise ValueError("s and values must have the same length")
        if any(b <= a for a, b in zip(self.s, self.s[1:])):
            raise ValueError("s must be strictly increasing")
        return self


class GaussTable(BaseModel):
    """Sampled Gauss curvature K(s, u) on a tensor table, values[i][j] = K(s_i, u_j)."""

    s: Annotated[list[float], Field(min_length=4)]
    u: Annotated[list[float], Field(min_length=4)]
    values: list[list[float]]

    @model_validator(mode="after")
    def check_shape(self) -> "GaussTable":
        if len(self.values) != len(self.s) or any(len(r) != len(self.u) for r in self.values):
            raise ValueError("values must have shape len(s) x len(u)")
        for axis in (self.s, self.u):
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise ValueError("table axes must be strictly increasing")
        return self


class GeometryConfig(BaseModel):
    """A preset by name, or custom kappa / K tables."""

    preset: GeometryPreset | None = GeometryPreset.FLAT_LINE
    length: Annotated[float, Field(gt=0)] = math.pi
    curvature: float = 1.0
    amplitude: float = 1.0
    kappa_table: CurvatureTable | None = None
    gauss_table: GaussTable | None = None
    gauss_constant: float = 0.0

    @model_validator(mode="after")
    def check_source(self) -> "GeometryConfig":
        custom = self.kappa_table is not None or self.gauss_table is not None
        if custom and self.preset is not None and "preset" in self.model_fields_set:
            raise ValueError("give either a preset or custom tables, not both")
        if custom:
            tables = {"kappa_table": self.kappa_table, "gauss_table": self.gauss_table}
            for label, table in tables.items():
                if table is not None and (table.s[0] > 0.0 or table.s[-1] < self.length):
                    raise ValueError(
                        f"{label} covers s in [{table.s[0]:g}, {table.s[-1]:g}], "
                        f"which does not span [0, {self.length:g}]"
                    )
            self.preset = None
        elif self.preset is None:
            raise ValueError("a preset is required when no custom tables are given")
        return self

    @property
    def name(self) -> str:
        return self.preset.value if self.preset is not None else "custom"


class GridConfig(BaseModel):
    """Tensor grid resolution."""

    n_s: Annotated[int, Field(ge=8)] = 256
    n_t: Annotated[int, Field(ge=3)] = 9
    max_n_s: Annotated[int, Field(ge=8)] = 1025

    @field_validator("n_t")
    @classmethod
    def validate_n_t(cls, v: int) -> int:
        """t = 0 must be a grid node."""
        if v % 2 == 0:
            raise ValueError(f"n_t must be odd so that t = 0 is a node, got {v}")
        return v


class ToleranceConfig(BaseModel):
    """Solver and analysis tolerances."""

    solver: Annotated[float, Field(ge=1e-12, le=1e-6)] = 1e-8
    max_iter: Annotated[int, Field(ge=1)] = 500
    resolvent: Annotated[float, Field(gt=0, lt=1)] = 1e-6
    power_max_iter: Annotated[int, Field(ge=1)] = 2000
    flat_top: Annotated[float, Field(gt=0, lt=1)] = 1e-6
    grad: Annotated[float, Field(gt=0, lt=1)] = 1e-3


class SweepConfig(BaseModel):
    """Options for the epsilon-sweep convergence study."""

    mode: Annotated[int, Field(ge=2)] = 2
    observables: list[Observable] = Field(
        default_factory=lambda: [
            Observable.EIGENVALUE_ERROR,
            Observable.L2_ERROR,
            Observable.SUP_ERROR,
            Observable.RESOLVENT_GAP,
        ]
    )
    reference: ReferenceKind = ReferenceKind.DISCRETE
    scale_grid: bool = True
    min_slope: float = 0.9
    workers: Annotated[int, Field(ge=1)] = 1


class RunConfig(BaseModel):
    """Root run configuration."""

    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    epsilon: float | list[float]
    max_mode: Annotated[int, Field(ge=2, le=12)] = 4
    grid: GridConfig = Field(default_factory=GridConfig)
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    delta: Annotated[float, Field(gt=0)] | None = None
    output_dir: Path = Path("./output")
    seed: int = 42
    export_matrices: bool = False
    sweep: SweepConfig = Field(default_factory=SweepConfig)

    @property
    def epsilons(self) -> tuple[float, ...]:
        values = self.epsilon if isinstance(self.epsilon, list) else [self.epsilon]
        return tuple(values)

    @model_validator(mode="after")
    def validate_epsilons(self) -> "RunConfig":
        """Every width must keep the first N modes of H_0 on the curve branch."""
        if not self.epsilons:
            raise ValueError("at least one epsilon is required")
        limit = self.geometry.length / (2 * (self.max_mode - 1))
        for eps in self.epsilons:
            if eps <= 0:
                raise ValueError(f"epsilon must be positive, got {eps}")
            if eps >= limit:
                raise ValueError(
                    f"epsilon {eps} violates eps < L/(2(N-1)) = {limit:.6g} "
                    f"for N = {self.max_mode}"
                )
        if self.sweep.mode > self.max_mode:
            raise ValueError(f"sweep mode {self.sweep.mode} exceeds max_mode {self.max_mode}")
        if self.delta is not None and self.delta >= self.geometry.length / (4 * (self.max_mode - 1)):
            raise ValueError("delta must be below L/(4(N-1))")
        return self
