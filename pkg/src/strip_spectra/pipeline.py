"""Wiring from a strip geometry to assembled forms and aligned eigenpairs."""

from dataclasses import dataclass

import numpy as np

from .eigen.solver import EigenPair, align_sign, solve_smallest
from .geometry.jacobi import MetricField, solve_jacobi
from .geometry.strip import StripGeometry
from .operator.assembly import DiscreteForms, assemble_eps, assemble_flat
from .operator.grid import GridSpec
from .operator.reference import sample_psi0


@dataclass(frozen=True)
class StripProblem:
    """Metric plus the H_eps and H_0 forms of one strip on one grid."""

    geometry: StripGeometry
    metric: MetricField
    forms_eps: DiscreteForms
    forms_flat: DiscreteForms

    @property
    def grid(self) -> GridSpec:
        return self.metric.grid

    @property
    def root_f(self) -> np.ndarray:
        """Node values of f^(1/2), the discrete unitary U_eps."""
        return np.sqrt(self.grid.to_vector(self.metric.f))


def build_problem(geometry: StripGeometry, n_s: int, n_t: int) -> StripProblem:
    metric = solve_jacobi(geometry, n_s, n_t)
    return StripProblem(
        geometry=geometry,
        metric=metric,
        forms_eps=assemble_eps(metric),
        forms_flat=assemble_flat(metric.grid, geometry.epsilon),
    )


def aligned_modes(
    forms: DiscreteForms,
    count: int,
    tol: float = 1e-8,
    max_iter: int = 500,
    seed: int = 42,
    warn_degenerate: bool = True,
) -> list[EigenPair]:
    """Smallest ``count`` eigenpairs, each n >= 2 sign-aligned to psi_n^0.

    The ground state is aligned to the positive constant.
    """
    pairs = solve_smallest(
        forms, count, tol=tol, max_iter=max_iter, seed=seed, warn_degenerate=warn_degenerate
    )
    return [
        align_sign(pair, sample_psi0(pair.index, forms.grid), forms.mass) for pair in pairs
    ]
