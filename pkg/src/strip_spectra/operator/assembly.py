"""Bilinear finite-element assembly of the Neumann forms h_eps and h_0.

The stiffness matrix realizes

    h_eps[psi] = int f^-1 |psi_s|^2 + eps^-2 int f |psi_t|^2

and the mass matrix the weighted product int f |psi|^2, both on conforming
bilinear elements of the tensor grid with 2x2 Gauss quadrature and f
interpolated bilinearly inside each cell. Neumann conditions are natural, so
no rows are constrained.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from scipy import sparse

from ..errors import NonPositiveJacobian, PreconditionViolated
from .grid import GridSpec

if TYPE_CHECKING:
    from ..geometry.jacobi import MetricField

logger = logging.getLogger(__name__)

# Smallest n_s the forms are assembled on; coarser grids exist only for the Jacobi field.
MIN_NODES_S = 8
_GAUSS = (0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0))
# Local corner order: (0,0), (1,0), (0,1), (1,1) in (xi, eta).
_CORNERS = ((0, 0), (1, 0), (0, 1), (1, 1))


@dataclass(frozen=True)
class DiscreteForms:
    """Stiffness ``A`` and mass ``M`` of one Neumann form on ``grid``."""

    grid: GridSpec
    stiffness: sparse.csr_matrix
    mass: sparse.csr_matrix
    epsilon: float

    def rayleigh_quotient(self, vector: np.ndarray) -> float:
        v = np.asarray(vector, dtype=float).ravel()
        return float(v @ (self.stiffness @ v)) / float(v @ (self.mass @ v))

    def inner(self, u: np.ndarray, v: np.ndarray) -> float:
        """Mass-weighted inner product of two grid functions."""
        return float(np.ravel(u) @ (self.mass @ np.ravel(v)))

    def max_asymmetry(self) -> tuple[float, float]:
        """Largest |X - X^T| entry relative to max |X|, for A and M."""
        out = []
        for matrix in (self.stiffness, self.mass):
            diff = abs(matrix - matrix.T).max()
            out.append(float(diff) / float(abs(matrix).max()))
        return out[0], out[1]


def _shape_functions() -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Values and reference derivatives of the four bilinear basis functions.

    Returns one ``(N, dN/dxi, dN/deta)`` triple per Gauss point.
    """
    points = []
    for eta in _GAUSS:
        for xi in _GAUSS:
            n = np.empty(4)
            dxi = np.empty(4)
            deta = np.empty(4)
            for a, (ca, ea) in enumerate(_CORNERS):
                px = xi if ca else 1.0 - xi
                py = eta if ea else 1.0 - eta
                sx = 1.0 if ca else -1.0
                sy = 1.0 if ea else -1.0
                n[a] = px * py
                dxi[a] = sx * py
                deta[a] = px * sy
            points.append((n, dxi, deta))
    return points


def _cell_nodes(grid: GridSpec) -> np.ndarray:
    """Global node indices of each cell's corners, shape ``(n_cells, 4)``."""
    i, j = np.meshgrid(np.arange(grid.n_s - 1), np.arange(grid.n_t - 1))
    i, j = i.ravel(), j.ravel()
    base = j * grid.n_s + i
    return np.column_stack((base, base + 1, base + grid.n_s, base + grid.n_s + 1))


def _assemble(grid: GridSpec, f: np.ndarray, epsilon: float) -> DiscreteForms:
    if grid.n_s < MIN_NODES_S:
        raise PreconditionViolated(
            f"assembly needs n_s >= {MIN_NODES_S}, got {grid.n_s}", module="operator"
        )
    f_nodes = grid.to_vector(f)
    if np.any(f_nodes <= 0.0):
        raise NonPositiveJacobian(
            f"metric weight has non-positive samples (min {f_nodes.min():.6g})",
            module="operator",
        )
    cells = _cell_nodes(grid)
    f_corners = f_nodes[cells]
    h_s, h_t = grid.h_s, grid.h_t
    weight = 0.25 * h_s * h_t

    local_a = np.zeros((len(cells), 4, 4))
    local_m = np.zeros((len(cells), 4, 4))
    for n, dxi, deta in _shape_functions():
        f_q = f_corners @ n
        ds = dxi / h_s
        dt = deta / h_t
        local_a += weight * (
            (1.0 / f_q)[:, None, None] * np.outer(ds, ds)
            + (epsilon**-2 * f_q)[:, None, None] * np.outer(dt, dt)
        )
        local_m += weight * f_q[:, None, None] * np.outer(n, n)

    rows = np.repeat(cells, 4, axis=1).ravel()
    cols = np.tile(cells, (1, 4)).ravel()
    shape = (grid.size, grid.size)
    stiffness = sparse.coo_matrix((local_a.ravel(), (rows, cols)), shape=shape).tocsr()
    mass = sparse.coo_matrix((local_m.ravel(), (rows, cols)), shape=shape).tocsr()
    logger.debug(
        "Assembled %d cells into %dx%d forms (nnz A=%d)",
        len(cells), grid.size, grid.size, stiffness.nnz,
    )
    return DiscreteForms(grid=grid, stiffness=stiffness, mass=mass, epsilon=epsilon)


def assemble_eps(metric: MetricField) -> DiscreteForms:
    """Forms of H_eps in L^2(Pi, f_eps ds dt)."""
    return _assemble(metric.grid, metric.f, metric.epsilon)


def assemble_flat(grid: GridSpec, epsilon: float) -> DiscreteForms:
    """Forms of H_0 in L^2(Pi), the same elements with f = 1."""
    return _assemble(grid, np.ones(grid.shape), epsilon)


def export_triplets(matrix: sparse.spmatrix, path: Path) -> Path:
    """Write ``row col value`` lines (17 significant digits) sorted by row, col."""
    coo = sparse.coo_matrix(matrix)
    order = np.lexsort((coo.col, coo.row))
    with open(path, "w") as f:
        for k in order:
            f.write(f"{coo.row[k]} {coo.col[k]} {coo.data[k]:.17g}\n")
    return path
