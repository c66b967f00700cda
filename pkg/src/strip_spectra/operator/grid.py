"""Uniform tensor grid on the reference rectangle [0, L] x [-1, 1]."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Tensor grid with ``n_s`` nodes along the curve and ``n_t`` across it.

    Grid functions are stored as arrays of shape ``(n_t, n_s)`` (row = t-index,
    column = s-index); flattened vectors use the same C order, so node
    ``(i, j)`` has index ``j * n_s + i``.
    Any ``n_s >= 2`` is accepted so the Jacobi field can be sampled coarsely;
    assembling forms needs ``n_s >= 8``.
    """

    length: float
    n_s: int
    n_t: int

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise ValueError(f"Grid length must be positive, got {self.length}")
        if self.n_s < 2:
            raise ValueError(f"n_s must be at least 2, got {self.n_s}")
        if self.n_t < 3 or self.n_t % 2 == 0:
            raise ValueError(f"n_t must be odd and at least 3, got {self.n_t}")

    @property
    def h_s(self) -> float:
        return self.length / (self.n_s - 1)

    @property
    def h_t(self) -> float:
        return 2.0 / (self.n_t - 1)

    @property
    def center(self) -> int:
        """Row index of the t = 0 line."""
        return (self.n_t - 1) // 2

    @property
    def size(self) -> int:
        return self.n_s * self.n_t

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_t, self.n_s)

    @cached_property
    def s(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.n_s)

    @cached_property
    def t(self) -> np.ndarray:
        t = np.linspace(-1.0, 1.0, self.n_t)
        t[self.center] = 0.0
        return t

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(S, T)`` coordinate arrays of shape ``(n_t, n_s)``."""
        return np.meshgrid(self.s, self.t)

    def to_vector(self, values: np.ndarray) -> np.ndarray:
        return np.asarray(values, dtype=float).reshape(self.size)

    def to_grid(self, vector: np.ndarray) -> np.ndarray:
        return np.asarray(vector, dtype=float).reshape(self.shape)

    def boundary_mask(self) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        mask[0, :] = mask[-1, :] = True
        mask[:, 0] = mask[:, -1] = True
        return mask
