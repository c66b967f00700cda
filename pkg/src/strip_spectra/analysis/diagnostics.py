"""Uniform-class diagnostic for the critical half-width."""

import numpy as np

from ..geometry.strip import StripGeometry
from ..models.reports import UniformClassReport

SAMPLES_S = 1025
SAMPLES_U = 33


def uniform_class_check(geom: StripGeometry) -> UniformClassReport:
    """Sample sup of sum_{i<=3} (|kappa^(i)| + |d_s^i K|) + |d_u K| on (0, L) x (-eps, eps).

    Only the bound is reported; nothing is inferred about the critical width.
    """
    s = np.linspace(0.0, geom.length, SAMPLES_S)[1:-1]
    u = np.linspace(-geom.epsilon, geom.epsilon, SAMPLES_U)
    S, U = np.meshgrid(s, u)
    total = np.zeros(S.shape)
    for order in range(4):
        total += np.abs(geom.evaluate_kappa(s, order))[None, :]
        total += np.abs(geom.evaluate_gauss(S, U, ds=order))
    total += np.abs(geom.evaluate_gauss(S, U, du=1))
    return UniformClassReport(
        geometry=geom.name,
        length=geom.length,
        epsilon=geom.epsilon,
        bound=float(total.max()),
    )
