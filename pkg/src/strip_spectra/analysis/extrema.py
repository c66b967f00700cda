"""Extrema and stationary points of eigenfunctions versus the localization bands.

The n-th interval eigenfunction has stationary points s_m = m L / (n - 1),
maxima for even m and minima for odd m. For thin strips the extrema of the
n-th strip eigenfunction must lie in the closed sets

    S~_0 = {0} x [-1, 1],  S~_{n-1} = {L} x [-1, 1],
    S~_m = closure of (s_m - delta, s_m + delta) x (-1, 1),  0 < m < n - 1,

maxima in even-m sets and minima in odd-m sets, with no stationary points
outside the open bands S_m(delta) and no extremum of the wrong kind inside
the interior bands.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from ..eigen.solver import EigenPair, align_sign
from ..errors import DegenerateRange, PreconditionViolated
from ..models.reports import ExtremaReport
from ..operator.grid import GridSpec
from ..operator.reference import sample_psi0

DEFAULT_FLAT_TOP_TOL = 1e-6
DEFAULT_GRAD_TOL = 1e-3
Node = tuple[int, int]


@dataclass(frozen=True)
class StationaryPoint:
    m: int
    s: float
    kind: str


def stationary_points_1d(n: int, length: float) -> list[StationaryPoint]:
    """``s_m = m L / (n - 1)`` for m = 0..n-1, even m maxima, odd m minima."""
    if n < 2:
        raise ValueError(f"mode index must be at least 2, got {n}")
    return [
        StationaryPoint(m, m * length / (n - 1), "max" if m % 2 == 0 else "min")
        for m in range(n)
    ]


def default_delta(n: int, length: float, max_mode: int | None = None) -> float:
    """``0.1 L / (n - 1)``, capped at ``0.2 L / (N - 1)`` to stay inside (0, L / (4(N - 1)))."""
    delta = 0.1 * length / (n - 1)
    if max_mode is not None:
        delta = min(delta, 0.2 * length / (max_mode - 1))
    return delta


def _grid_values(pair: EigenPair | np.ndarray, grid: GridSpec) -> np.ndarray:
    vector = pair.vector if isinstance(pair, EigenPair) else pair
    return grid.to_grid(vector)


def _nodes(mask: np.ndarray) -> list[Node]:
    """``(s_index, t_index)`` pairs of a ``(n_t, n_s)`` mask, sorted."""
    j, i = np.nonzero(mask)
    return sorted(zip(i.tolist(), j.tolist()))


def locate_extrema(
    pair: EigenPair | np.ndarray,
    grid: GridSpec,
    flat_top_tol: float = DEFAULT_FLAT_TOP_TOL,
) -> tuple[list[Node], list[Node]]:
    """Nodes within ``flat_top_tol * (max - min)`` of the global max and min."""
    values = _grid_values(pair, grid)
    vmax, vmin = float(values.max()), float(values.min())
    span = vmax - vmin
    if span < 1e-12:
        raise DegenerateRange(f"grid function is constant (range {span:.3e})")
    band = flat_top_tol * span
    return _nodes(values >= vmax - band), _nodes(values <= vmin + band)


def _strict_local_extrema(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Masks of nodes strictly above (below) every available 8-neighbour."""
    n_t, n_s = values.shape
    low = np.pad(values, 1, constant_values=-np.inf)
    high = np.pad(values, 1, constant_values=np.inf)
    is_max = np.ones(values.shape, dtype=bool)
    is_min = np.ones(values.shape, dtype=bool)
    for dj in (-1, 0, 1):
        for di in (-1, 0, 1):
            if dj == 0 and di == 0:
                continue
            rows = slice(1 + dj, 1 + dj + n_t)
            cols = slice(1 + di, 1 + di + n_s)
            is_max &= values > low[rows, cols]
            is_min &= values < high[rows, cols]
    return is_max, is_min


def check_location(
    pair: EigenPair | np.ndarray,
    n: int,
    delta: float,
    grid: GridSpec,
    *,
    epsilon: float = 0.0,
    max_mode: int | None = None,
    mass: sparse.spmatrix | None = None,
    flat_top_tol: float = DEFAULT_FLAT_TOP_TOL,
    grad_tol: float = DEFAULT_GRAD_TOL,
) -> ExtremaReport:
    """Test the extrema and stationary points of mode ``n`` against its bands.

    When ``mass`` is given the pair is first sign-aligned to psi_n^0, which
    propagates DegenerateAlignment.
    """
    top = max_mode or n
    if not 2 <= n <= top:
        raise PreconditionViolated(f"mode {n} outside 2..{top}", module="analysis")
    limit = grid.length / (4 * (top - 1))
    if not 0.0 < delta < limit:
        raise PreconditionViolated(
            f"delta must lie in (0, L/(4(N-1))) = (0, {limit:.6g}), got {delta}",
            module="analysis",
        )
    if mass is not None and isinstance(pair, EigenPair):
        pair = align_sign(pair, sample_psi0(n, grid), mass)

    values = _grid_values(pair, grid)
    max_nodes, min_nodes = locate_extrema(values, grid, flat_top_tol)

    s = grid.s
    points = stationary_points_1d(n, grid.length)
    closed = []
    open_bands = []
    for p in points:
        if p.m == 0:
            closed.append(np.arange(grid.n_s) == 0)
        elif p.m == n - 1:
            closed.append(np.arange(grid.n_s) == grid.n_s - 1)
        else:
            closed.append(np.abs(s - p.s) <= delta)
        open_bands.append((np.abs(s - p.s) < delta) & (s > 0.0) & (s < grid.length))

    even_cols = np.any([c for p, c in zip(points, closed) if p.m % 2 == 0], axis=0)
    odd_cols = np.any([c for p, c in zip(points, closed) if p.m % 2 == 1], axis=0)
    verdict_max = all(even_cols[i] for i, _ in max_nodes)
    verdict_min = all(odd_cols[i] for i, _ in min_nodes)

    grad_t, grad_s = np.gradient(values, grid.h_t, grid.h_s)
    magnitude = np.hypot(grad_s, grad_t)
    interior = np.zeros(grid.shape, dtype=bool)
    interior[1:-1, 1:-1] = True
    outside = ~np.any(open_bands, axis=0)
    stationary = interior & outside[None, :] & (magnitude < grad_tol * magnitude.max())

    is_max, is_min = _strict_local_extrema(values)
    forbidden = np.zeros(grid.shape, dtype=bool)
    for p, band in zip(points[1:-1], open_bands[1:-1]):
        wrong_kind = is_min if p.kind == "max" else is_max
        forbidden |= wrong_kind & band[None, :]

    boundary_verdict = None
    if n == 2:
        on_boundary = grid.boundary_mask()
        boundary_verdict = all(on_boundary[j, i] for i, j in max_nodes + min_nodes)

    stationary_nodes = _nodes(stationary)
    forbidden_nodes = _nodes(forbidden)
    return ExtremaReport(
        n=n,
        epsilon=epsilon,
        delta=delta,
        max_value=float(values.max()),
        min_value=float(values.min()),
        max_nodes=max_nodes,
        min_nodes=min_nodes,
        stationary_nodes=stationary_nodes,
        forbidden_extrema=forbidden_nodes,
        verdict_max=verdict_max,
        verdict_min=verdict_min,
        verdict_stationary=not stationary_nodes,
        verdict_forbidden=not forbidden_nodes,
        boundary_verdict=boundary_verdict,
    )


def location_onset(reports: list[ExtremaReport]) -> float | None:
    """Largest width from which every smaller width passes all verdicts."""
    onset = None
    for report in sorted(reports, key=lambda r: r.epsilon):
        if not report.passed:
            break
        onset = report.epsilon
    return onset
