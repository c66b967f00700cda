"""Explicit bounds on f_eps: the constant C_eps and its validity radius."""

import logging
import math

import numpy as np
from scipy.optimize import bisect

from ..errors import NonPositiveJacobian, PreconditionViolated
from ..models.reports import ValidityReport
from .jacobi import MetricField, solve_jacobi
from .strip import StripGeometry

logger = logging.getLogger(__name__)

EPS_TILDE_RTOL = 1e-10
MONOTONE_SAMPLES = 100


def c_epsilon_value(epsilon: float, kappa_sup: float, gauss_sup: float) -> float:
    """C_eps = eps k + (eps^2 K / 2) (1 + eps k) / (1 - eps^2 K / 2)."""
    half = 0.5 * epsilon**2 * gauss_sup
    if half >= 1.0:
        raise PreconditionViolated(
            f"C_eps needs eps^2 ||K|| < 2, got eps={epsilon}, ||K||={gauss_sup}"
        )
    return epsilon * kappa_sup + half * (1.0 + epsilon * kappa_sup) / (1.0 - half)


def c_epsilon(geom: StripGeometry) -> float:
    """Bound constant with 1 - C_eps <= f_eps <= 1 + C_eps on the whole grid."""
    return c_epsilon_value(geom.epsilon, geom.kappa_sup(), geom.gauss_sup())


def epsilon_tilde(geom: StripGeometry) -> float:
    """Unique root of C_eps = 1; ``math.inf`` when kappa and K both vanish.

    ||K|| is sampled on the neighbourhood of the geometry's own width and held
    fixed while the root is bracketed.
    """
    kappa_sup = geom.kappa_sup()
    gauss_sup = geom.gauss_sup()
    if kappa_sup == 0.0 and gauss_sup == 0.0:
        return math.inf
    if gauss_sup == 0.0:
        upper = 2.0 / kappa_sup
    else:
        upper = math.sqrt(2.0 / gauss_sup) * (1.0 - 1e-12)
    root = bisect(
        lambda eps: c_epsilon_value(eps, kappa_sup, gauss_sup) - 1.0,
        0.0,
        upper,
        xtol=1e-300,
        rtol=EPS_TILDE_RTOL,
        maxiter=400,
    )
    logger.debug("eps_tilde for %s: %.12g", geom.name, root)
    return float(root)


def c_epsilon_is_monotone(geom: StripGeometry, samples: int = MONOTONE_SAMPLES) -> bool:
    """Sampled check that C_eps increases on (0, sqrt(2 / ||K||))."""
    kappa_sup = geom.kappa_sup()
    gauss_sup = geom.gauss_sup()
    if kappa_sup == 0.0 and gauss_sup == 0.0:
        return True
    upper = 1.0 if gauss_sup == 0.0 else math.sqrt(2.0 / gauss_sup)
    eps = np.linspace(0.0, upper, samples + 2)[1:-1]
    values = np.array([c_epsilon_value(e, kappa_sup, gauss_sup) for e in eps])
    return bool(np.all(np.diff(values) > 0.0))


def validate_geometry(
    geom: StripGeometry, n_s: int = 256, n_t: int = 17
) -> tuple[ValidityReport, MetricField | None]:
    """Build the validity report and, when the Jacobian stays positive, the metric."""
    kappa_sup = geom.kappa_sup()
    gauss_sup = geom.gauss_sup()
    try:
        c_eps: float | None = c_epsilon(geom)
    except PreconditionViolated:
        c_eps = None
    eps_tilde = epsilon_tilde(geom)

    metric: MetricField | None
    try:
        metric = solve_jacobi(geom, n_s, n_t)
    except NonPositiveJacobian as exc:
        logger.warning("%s", exc)
        metric = None

    report = ValidityReport(
        geometry=geom.name,
        epsilon=geom.epsilon,
        kappa_sup=kappa_sup,
        gauss_sup=gauss_sup,
        c_eps=c_eps,
        eps_tilde=eps_tilde,
        c_eps_monotone=c_epsilon_is_monotone(geom),
        min_f=metric.min_f if metric is not None else None,
        max_f=metric.max_f if metric is not None else None,
        valid=metric is not None and geom.epsilon < eps_tilde and metric.min_f > 0.0,
    )
    return report, metric
