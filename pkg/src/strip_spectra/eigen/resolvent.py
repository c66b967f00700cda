"""Operator-norm estimate of the conjugated resolvent difference.

On flat grid functions g the difference acts as

    D g = f^(1/2) (A_eps + M_eps)^-1 M_eps (f^(-1/2) g) - (A_0 + M_0)^-1 M_0 g,

the discrete counterpart of U (H_eps + 1)^-1 U^-1 - (H_0 + 1)^-1 in L^2(Pi).
Node-wise conjugation by f^(1/2) is unitary between the two mass products
only up to quadrature error, so D is not exactly self-adjoint in the M_0
product; the norm is taken from power iteration on D* D, where D* is the
M_0-adjoint.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import NoConvergence, PreconditionViolated
from ..geometry.jacobi import MetricField
from ..operator.assembly import DiscreteForms
from .solver import factorize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResolventEstimate:
    """Largest-singular-value estimate of D (a lower bound growing within a run)."""

    norm_estimate: float
    iterations: int
    tolerance: float
    history: tuple[float, ...] = ()


class ResolventDifference:
    """Factorized action of D and its M_0-adjoint on flattened grid functions."""

    def __init__(
        self, forms_eps: DiscreteForms, forms_flat: DiscreteForms, metric: MetricField
    ) -> None:
        if forms_eps.grid != forms_flat.grid or metric.grid != forms_eps.grid:
            raise PreconditionViolated(
                "resolvent difference needs forms and metric on one grid", module="eigen"
            )
        self.mass_eps = forms_eps.mass
        self.mass_flat = forms_flat.mass
        self.root_f = np.sqrt(metric.grid.to_vector(metric.f))
        self.lu_eps = factorize(forms_eps.stiffness + forms_eps.mass, "A_eps + M_eps")
        self.lu_flat = factorize(forms_flat.stiffness + forms_flat.mass, "A_0 + M_0")
        self.lu_mass = factorize(forms_flat.mass, "M_0")

    def norm(self, g: np.ndarray) -> float:
        return float(np.sqrt(g @ (self.mass_flat @ g)))

    def apply(self, g: np.ndarray) -> np.ndarray:
        conjugated = self.root_f * self.lu_eps.solve(self.mass_eps @ (g / self.root_f))
        return conjugated - self.lu_flat.solve(self.mass_flat @ g)

    def apply_adjoint(self, y: np.ndarray) -> np.ndarray:
        # D^T = F^-1 M_eps K_eps^-1 F - M_0 K_0^-1, D* = M_0^-1 D^T M_0
        my = self.mass_flat @ y
        first = self.mass_eps @ self.lu_eps.solve(self.root_f * my) / self.root_f
        return self.lu_mass.solve(first) - self.lu_flat.solve(my)


def resolvent_gap(
    forms_eps: DiscreteForms,
    forms_flat: DiscreteForms,
    metric: MetricField,
    tol: float = 1e-8,
    max_iter: int = 2000,
    seed: int = 42,
) -> ResolventEstimate:
    """Estimate ||D|| in discrete L^2(Pi) by power iteration on D* D.

    Stops once successive estimates differ by less than ``tol`` relatively.
    """
    op = ResolventDifference(forms_eps, forms_flat, metric)
    w = np.random.default_rng(seed).standard_normal(forms_flat.grid.size)
    w /= op.norm(w)

    history: list[float] = []
    estimate = 0.0
    for iteration in range(1, max_iter + 1):
        y = op.apply(w)
        estimate = op.norm(y)
        history.append(estimate)
        if estimate == 0.0:
            return ResolventEstimate(0.0, iteration, tol, tuple(history))
        if len(history) > 1 and abs(estimate - history[-2]) < tol * estimate:
            logger.debug("Resolvent gap %.6e after %d iterations", estimate, iteration)
            return ResolventEstimate(estimate, iteration, tol, tuple(history))
        z = op.apply_adjoint(y)
        z_norm = op.norm(z)
        if z_norm == 0.0:
            return ResolventEstimate(estimate, iteration, tol, tuple(history))
        w = z / z_norm
    raise NoConvergence(
        f"power iteration for the resolvent gap did not reach tol {tol:.1e} "
        f"in {max_iter} iterations (last estimate {estimate:.6e})"
    )
