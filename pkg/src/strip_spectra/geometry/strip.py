"""Intrinsic strip data: curve length, curvature, Gauss curvature and half-width."""

from dataclasses import dataclass, replace

import numpy as np

from ..errors import EvaluationFailure
from ..models.config import GeometryConfig, GeometryPreset
from .profiles import (
    ConstantCurvature,
    ConstantGauss,
    CurvatureProfile,
    GaussField,
    SineCurvature,
    TabulatedCurvature,
    TabulatedGauss,
)

# Oversampling factor for supremum norms, relative to SUP_BASE_NODES.
SUP_OVERSAMPLE = 16
SUP_BASE_NODES = 256


@dataclass(frozen=True)
class StripGeometry:
    """A strip of half-width ``epsilon`` around a curve of length ``length``."""

    length: float
    kappa: CurvatureProfile
    gauss: GaussField
    epsilon: float
    name: str = "custom"

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise ValueError(f"Curve length must be positive, got {self.length}")
        if self.epsilon <= 0:
            raise ValueError(f"Half-width must be positive, got {self.epsilon}")

    def with_epsilon(self, epsilon: float) -> "StripGeometry":
        return replace(self, epsilon=epsilon)

    @property
    def is_flat(self) -> bool:
        """True when both kappa and K vanish identically."""
        return self.kappa.is_zero and self.gauss.constant == 0.0

    def sup_samples(self) -> np.ndarray:
        return np.linspace(0.0, self.length, SUP_OVERSAMPLE * SUP_BASE_NODES + 1)

    def evaluate_kappa(self, s: np.ndarray, derivative: int = 0) -> np.ndarray:
        try:
            values = np.asarray(self.kappa(s, derivative), dtype=float)
        except EvaluationFailure:
            raise
        except Exception as exc:
            raise EvaluationFailure(f"kappa evaluation failed: {exc}") from exc
        if not np.all(np.isfinite(values)):
            raise EvaluationFailure("kappa evaluated to a non-finite value")
        return values

    def evaluate_gauss(
        self, s: np.ndarray, u: np.ndarray, ds: int = 0, du: int = 0
    ) -> np.ndarray:
        try:
            values = np.asarray(self.gauss(s, u, ds, du), dtype=float)
        except EvaluationFailure:
            raise
        except Exception as exc:
            raise EvaluationFailure(f"Gauss curvature evaluation failed: {exc}") from exc
        if not np.all(np.isfinite(values)):
            raise EvaluationFailure("Gauss curvature evaluated to a non-finite value")
        return values

    def kappa_sup(self) -> float:
        """Grid maximum of |kappa| on the oversampled arc-length samples."""
        if self.kappa.is_zero:
            return 0.0
        return float(np.max(np.abs(self.evaluate_kappa(self.sup_samples()))))

    def gauss_sup(self) -> float:
        """Grid maximum of |K| over [0, L] x [-eps, eps].

        A lower bound for the true supremum when K is not constant.
        """
        if self.gauss.constant is not None:
            return abs(self.gauss.constant)
        s = self.sup_samples()
        u = np.linspace(-self.epsilon, self.epsilon, 2 * SUP_OVERSAMPLE + 1)
        S, U = np.meshgrid(s, u)
        return float(np.max(np.abs(self.evaluate_gauss(S, U))))


def flat_line(length: float, epsilon: float) -> StripGeometry:
    return StripGeometry(length, ConstantCurvature(0.0), ConstantGauss(0.0), epsilon, "flat-line")


def flat_arc(length: float, epsilon: float, curvature: float = 1.0) -> StripGeometry:
    return StripGeometry(
        length, ConstantCurvature(curvature), ConstantGauss(0.0), epsilon, "flat-arc"
    )


def flat_sine(length: float, epsilon: float, amplitude: float = 1.0) -> StripGeometry:
    return StripGeometry(
        length, SineCurvature(amplitude, length), ConstantGauss(0.0), epsilon, "flat-sine"
    )


def sphere_geodesic(length: float, epsilon: float) -> StripGeometry:
    return StripGeometry(
        length, ConstantCurvature(0.0), ConstantGauss(1.0), epsilon, "sphere-geodesic"
    )


def hyperbolic_geodesic(length: float, epsilon: float) -> StripGeometry:
    return StripGeometry(
        length, ConstantCurvature(0.0), ConstantGauss(-1.0), epsilon, "hyperbolic-geodesic"
    )


def sphere_circle(length: float, epsilon: float, curvature: float = 1.0) -> StripGeometry:
    return StripGeometry(
        length, ConstantCurvature(curvature), ConstantGauss(1.0), epsilon, "sphere-circle"
    )


PRESETS = {
    "flat-line": flat_line,
    "flat-arc": flat_arc,
    "flat-sine": flat_sine,
    "sphere-geodesic": sphere_geodesic,
    "hyperbolic-geodesic": hyperbolic_geodesic,
    "sphere-circle": sphere_circle,
}


def build_geometry(config: GeometryConfig, epsilon: float) -> StripGeometry:
    """Instantiate a preset or a tabulated custom geometry at width ``epsilon``."""
    if config.preset is None:
        kappa = (
            TabulatedCurvature(config.kappa_table.s, config.kappa_table.values)
            if config.kappa_table is not None
            else ConstantCurvature(0.0)
        )
        gauss = (
            TabulatedGauss(config.gauss_table.s, config.gauss_table.u, config.gauss_table.values)
            if config.gauss_table is not None
            else ConstantGauss(config.gauss_constant)
        )
        return StripGeometry(config.length, kappa, gauss, epsilon, "custom")

    factory = PRESETS[config.preset.value]
    if config.preset in (GeometryPreset.FLAT_ARC, GeometryPreset.SPHERE_CIRCLE):
        return factory(config.length, epsilon, curvature=config.curvature)
    if config.preset == GeometryPreset.FLAT_SINE:
        return factory(config.length, epsilon, amplitude=config.amplitude)
    return factory(config.length, epsilon)
