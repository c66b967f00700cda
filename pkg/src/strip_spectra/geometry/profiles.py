"""Curvature profiles kappa(s) and Gauss-curvature fields K(s, u)."""

from abc import ABC, abstractmethod

import numpy as np
from scipy.interpolate import CubicSpline, RectBivariateSpline

from ..errors import EvaluationFailure


class CurvatureProfile(ABC):
    """Geodesic curvature of the base curve as a function of arc length."""

    @abstractmethod
    def __call__(self, s: np.ndarray, derivative: int = 0) -> np.ndarray:
        """Evaluate ``kappa`` (or its ``derivative``-th derivative) at ``s``."""

    @property
    def is_zero(self) -> bool:
        return False


class ConstantCurvature(CurvatureProfile):
    def __init__(self, value: float) -> None:
        self.value = float(value)

    def __call__(self, s: np.ndarray, derivative: int = 0) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return np.full_like(s, self.value if derivative == 0 else 0.0)

    @property
    def is_zero(self) -> bool:
        return self.value == 0.0


class SineCurvature(CurvatureProfile):
    """``kappa(s) = A sin(2 pi s / L)``."""

    def __init__(self, amplitude: float, length: float) -> None:
        self.amplitude = float(amplitude)
        self.omega = 2.0 * np.pi / float(length)

    def __call__(self, s: np.ndarray, derivative: int = 0) -> np.ndarray:
        phase = self.omega * np.asarray(s, dtype=float) + derivative * np.pi / 2.0
        return self.amplitude * self.omega**derivative * np.sin(phase)

    @property
    def is_zero(self) -> bool:
        return self.amplitude == 0.0


class TabulatedCurvature(CurvatureProfile):
    """Cubic-spline interpolation of sampled curvature values."""

    def __init__(self, s: list[float], values: list[float]) -> None:
        self.s_range = (min(s), max(s))
        self.spline = CubicSpline(np.asarray(s, dtype=float), np.asarray(values, dtype=float))
        self._zero = not np.any(values)

    def __call__(self, s: np.ndarray, derivative: int = 0) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        tol = 1e-12
        if s.size and (s.min() < self.s_range[0] - tol or s.max() > self.s_range[1] + tol):
            raise EvaluationFailure(
                f"curvature table covers s in {self.s_range}, "
                f"requested [{s.min():.6g}, {s.max():.6g}]"
            )
        return self.spline(s, derivative)

    @property
    def is_zero(self) -> bool:
        return self._zero


class GaussField(ABC):
    """Gauss curvature ``K(s, u)`` with ``u`` the unscaled normal distance."""

    constant: float | None = None

    @abstractmethod
    def __call__(
        self, s: np.ndarray, u: np.ndarray, ds: int = 0, du: int = 0
    ) -> np.ndarray:
        """Evaluate ``K`` (or a partial derivative) on broadcast ``s``, ``u``."""


class ConstantGauss(GaussField):
    def __init__(self, value: float) -> None:
        self.constant = float(value)

    def __call__(
        self, s: np.ndarray, u: np.ndarray, ds: int = 0, du: int = 0
    ) -> np.ndarray:
        s, u = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(u, dtype=float))
        value = self.constant if ds == 0 and du == 0 else 0.0
        return np.full(s.shape, value)


class TabulatedGauss(GaussField):
    """Spline interpolation of ``K`` sampled on an ``(s, u)`` table.

    Quintic along s when at least six samples exist, so that third s-derivatives
    are available; cubic otherwise.
    """

    def __init__(self, s: list[float], u: list[float], values: list[list[float]]) -> None:
        self.s_range = (min(s), max(s))
        self.u_range = (min(u), max(u))
        self.kx = 5 if len(s) >= 6 else 3
        self.spline = RectBivariateSpline(
            np.asarray(s, dtype=float),
            np.asarray(u, dtype=float),
            np.asarray(values, dtype=float),
            kx=self.kx,
            ky=3,
        )

    def __call__(
        self, s: np.ndarray, u: np.ndarray, ds: int = 0, du: int = 0
    ) -> np.ndarray:
        s, u = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(u, dtype=float))
        tol = 1e-12
        if u.size and (u.min() < self.u_range[0] - tol or u.max() > self.u_range[1] + tol):
            raise EvaluationFailure(
                f"Gauss table covers u in {self.u_range}, "
                f"requested [{u.min():.6g}, {u.max():.6g}]"
            )
        if s.size and (s.min() < self.s_range[0] - tol or s.max() > self.s_range[1] + tol):
            raise EvaluationFailure(
                f"Gauss table covers s in {self.s_range}, "
                f"requested [{s.min():.6g}, {s.max():.6g}]"
            )
        if ds >= self.kx or du >= 3:
            raise EvaluationFailure(f"Gauss table cannot supply derivative (ds={ds}, du={du})")
        values = self.spline.ev(s.ravel(), u.ravel(), dx=ds, dy=du)
        return values.reshape(s.shape)
