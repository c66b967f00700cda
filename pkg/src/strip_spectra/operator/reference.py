"""Closed-form spectrum of H_0 on the rectangle and its bilinear-element twin."""

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec


@dataclass(frozen=True, order=True)
class ReferenceEigenvalue:
    """``lambda_n^0 + nu_m`` with curve index ``n >= 1`` and transverse index ``m >= 0``."""

    value: float
    m: int
    n: int


@dataclass(frozen=True)
class ReferenceSpectrum:
    length: float
    epsilon: float
    entries: list[ReferenceEigenvalue]

    @property
    def values(self) -> list[float]:
        return [e.value for e in self.entries]


def curve_eigenvalue(n: int, length: float) -> float:
    """``lambda_n^0 = ((n - 1) pi / L)^2`` of the Neumann interval (0, L)."""
    return ((n - 1) * np.pi / length) ** 2


def transverse_eigenvalue(m: int, epsilon: float) -> float:
    """``nu_m = (m pi / (2 eps))^2``."""
    return (m * np.pi / (2.0 * epsilon)) ** 2


def reference_spectrum(length: float, epsilon: float, count: int) -> ReferenceSpectrum:
    """The ``count`` smallest ``lambda_n^0 + nu_m``, ties broken by ``(m, n)``."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    entries = sorted(
        ReferenceEigenvalue(
            curve_eigenvalue(n, length) + transverse_eigenvalue(m, epsilon), m, n
        )
        for n in range(1, count + 1)
        for m in range(count)
    )
    return ReferenceSpectrum(length, epsilon, entries[:count])


def interval_mode(n: int, s: np.ndarray, length: float) -> np.ndarray:
    """``u_n^0``: constant for n = 1, ``sqrt(2/L) cos((n-1) pi s / L)`` otherwise."""
    if n < 1:
        raise ValueError(f"mode index must be at least 1, got {n}")
    s = np.asarray(s, dtype=float)
    if n == 1:
        return np.full_like(s, 1.0 / np.sqrt(length))
    return np.sqrt(2.0 / length) * np.cos((n - 1) * np.pi * s / length)


def sample_psi0(n: int, grid: GridSpec) -> np.ndarray:
    """``psi_n^0 = u_n^0 (x) chi_0`` on the grid, unit norm in L^2(Pi)."""
    column = interval_mode(n, grid.s, grid.length) / np.sqrt(2.0)
    return np.broadcast_to(column, grid.shape).copy()


def _linear_element_eigenvalues(nodes: int, h: float) -> np.ndarray:
    theta = np.arange(nodes) * np.pi / (nodes - 1)
    return (6.0 / h**2) * (1.0 - np.cos(theta)) / (2.0 + np.cos(theta))


def discrete_flat_spectrum(grid: GridSpec, epsilon: float, count: int) -> np.ndarray:
    """Exact eigenvalues of the flat bilinear pencil (A_0, M_0), ascending.

    The Neumann linear-element pencil on a uniform 1D grid has eigenvectors
    ``cos(k pi i / (n - 1))``, and the tensor pencil separates.
    """
    mu_s = _linear_element_eigenvalues(grid.n_s, grid.h_s)
    mu_t = _linear_element_eigenvalues(grid.n_t, grid.h_t)
    values = (mu_s[None, :] + epsilon**-2 * mu_t[:, None]).ravel()
    return np.sort(values)[:count]
