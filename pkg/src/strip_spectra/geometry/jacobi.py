"""Jacobi equation for the Fermi-coordinate Jacobian f_eps.

For each fixed s the Jacobian solves

    f'' + eps^2 K(s, eps t) f = 0,   f(s, 0) = 1,   f'(s, 0) = -eps kappa(s),

on t in [-1, 1]. All s-columns are integrated at once as one vectorized
system, so the result does not depend on any scheduling.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import NonPositiveJacobian, PreconditionViolated
from ..operator.grid import GridSpec
from .strip import StripGeometry

logger = logging.getLogger(__name__)

# RK4 substeps per t-grid interval.
SUBSTEPS = 4


@dataclass(frozen=True)
class MetricField:
    """Samples of f_eps and its partials on a grid, arrays shaped ``(n_t, n_s)``."""

    grid: GridSpec
    epsilon: float
    f: np.ndarray
    df_ds: np.ndarray
    df_dt: np.ndarray
    d2f_dt2: np.ndarray
    geometry_name: str = "custom"

    @property
    def min_f(self) -> float:
        return float(self.f.min())

    @property
    def max_f(self) -> float:
        return float(self.f.max())

    @property
    def is_flat(self) -> bool:
        return bool(np.all(self.f == 1.0))


def _rk4_sweep(
    geom: StripGeometry, s: np.ndarray, t_nodes: np.ndarray, kappa: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integrate from t = 0 through the monotone sequence ``t_nodes``.

    Returns f, f_t and K at each requested node (rows) for every s (columns).
    """
    eps = geom.epsilon
    constant_k = geom.gauss.constant

    def gauss_at(t: float) -> np.ndarray:
        if constant_k is not None:
            return np.full_like(s, constant_k)
        return geom.evaluate_gauss(s, np.full_like(s, eps * t))

    def rhs(t: float, f: np.ndarray, g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return g, -(eps**2) * gauss_at(t) * f

    f = np.ones_like(s)
    g = -eps * kappa
    t = 0.0
    out_f = np.empty((len(t_nodes), len(s)))
    out_g = np.empty_like(out_f)
    out_k = np.empty_like(out_f)
    for row, target in enumerate(t_nodes):
        h = (target - t) / SUBSTEPS
        for _ in range(SUBSTEPS):
            k1f, k1g = rhs(t, f, g)
            k2f, k2g = rhs(t + h / 2, f + h / 2 * k1f, g + h / 2 * k1g)
            k3f, k3g = rhs(t + h / 2, f + h / 2 * k2f, g + h / 2 * k2g)
            k4f, k4g = rhs(t + h, f + h * k3f, g + h * k3g)
            f = f + h / 6 * (k1f + 2 * k2f + 2 * k3f + k4f)
            g = g + h / 6 * (k1g + 2 * k2g + 2 * k3g + k4g)
            t = t + h
        t = target
        out_f[row], out_g[row], out_k[row] = f, g, gauss_at(target)
    return out_f, out_g, out_k


def central_difference_s(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order first derivative along axis 1 (one-sided at both ends)."""
    n = values.shape[1]
    if n < 5:
        return np.gradient(values, h, axis=1)
    d = np.empty_like(values)
    v = values
    d[:, 2:-2] = (v[:, :-4] - 8 * v[:, 1:-3] + 8 * v[:, 3:-1] - v[:, 4:]) / (12 * h)
    d[:, 0] = (-25 * v[:, 0] + 48 * v[:, 1] - 36 * v[:, 2] + 16 * v[:, 3] - 3 * v[:, 4]) / (12 * h)
    d[:, 1] = (-3 * v[:, 0] - 10 * v[:, 1] + 18 * v[:, 2] - 6 * v[:, 3] + v[:, 4]) / (12 * h)
    d[:, -1] = (25 * v[:, -1] - 48 * v[:, -2] + 36 * v[:, -3] - 16 * v[:, -4] + 3 * v[:, -5]) / (12 * h)
    d[:, -2] = (3 * v[:, -1] + 10 * v[:, -2] - 18 * v[:, -3] + 6 * v[:, -4] - v[:, -5]) / (12 * h)
    return d


def solve_jacobi(geom: StripGeometry, n_s: int, n_t: int) -> MetricField:
    """Integrate the Jacobi equation on an ``n_s`` x ``n_t`` grid.

    Raises:
        PreconditionViolated: grid sizes out of range.
        EvaluationFailure: kappa or K could not be evaluated.
        NonPositiveJacobian: some sample of f is <= 0.
    """
    if n_s < 2 or n_t < 3 or n_t % 2 == 0:
        raise PreconditionViolated(
            f"solve_jacobi needs n_s >= 2 and odd n_t >= 3, got n_s={n_s}, n_t={n_t}"
        )
    grid = GridSpec(geom.length, n_s, n_t)
    s = grid.s
    c = grid.center
    eps = geom.epsilon
    kappa = geom.evaluate_kappa(s)

    f = np.empty(grid.shape)
    g = np.empty(grid.shape)
    k = np.empty(grid.shape)
    f[c] = 1.0
    g[c] = -eps * kappa
    k[c] = geom.gauss.constant if geom.gauss.constant is not None else geom.evaluate_gauss(s, 0.0 * s)

    up_f, up_g, up_k = _rk4_sweep(geom, s, grid.t[c + 1 :], kappa)
    down_f, down_g, down_k = _rk4_sweep(geom, s, grid.t[c - 1 :: -1], kappa)
    f[c + 1 :], g[c + 1 :], k[c + 1 :] = up_f, up_g, up_k
    f[:c], g[:c], k[:c] = down_f[::-1], down_g[::-1], down_k[::-1]

    min_f = float(f.min())
    if min_f <= 0.0:
        raise NonPositiveJacobian(
            f"f_eps reaches {min_f:.6g} at eps={eps}: strip of '{geom.name}' "
            "is not a local diffeomorphism"
        )
    logger.debug(
        "Jacobi field for %s at eps=%g on %dx%d grid: f in [%.12g, %.12g]",
        geom.name, eps, n_s, n_t, min_f, f.max(),
    )
    return MetricField(
        grid=grid,
        epsilon=eps,
        f=f,
        df_ds=central_difference_s(f, grid.h_s),
        df_dt=g,
        d2f_dt2=-(eps**2) * k * f,
        geometry_name=geom.name,
    )


def flat_metric(grid: GridSpec, epsilon: float) -> MetricField:
    """Metric with f identically 1 (the H_0 weight)."""
    zeros = np.zeros(grid.shape)
    return MetricField(grid, epsilon, np.ones(grid.shape), zeros, zeros.copy(), zeros.copy(), "flat")
