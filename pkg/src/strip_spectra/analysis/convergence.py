"""Epsilon-sweep convergence studies with least-squares log-log rate fits."""

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..eigen.resolvent import resolvent_gap
from ..eigen.solver import EigenPair
from ..errors import DiscretizationFloor, InsufficientData, PreconditionViolated
from ..geometry.bounds import epsilon_tilde
from ..geometry.strip import StripGeometry
from ..models.config import Observable, ReferenceKind
from ..models.reports import ConvergencePoint, ConvergenceReport
from ..operator.reference import curve_eigenvalue, sample_psi0
from ..pipeline import StripProblem, aligned_modes, build_problem

logger = logging.getLogger(__name__)

MIN_POINTS = 4
MAX_RATIO = 1.0 / math.sqrt(2.0)
# Discretization error target relative to the expected model error.
FLOOR_FRACTION = 0.1
# e(eps_min) / e(eps_prev) at or above this counts as stagnation.
STAGNATION_RATIO = 0.95


@dataclass(frozen=True)
class SweepSettings:
    """Numerical knobs of a sweep; ``max_mode`` defaults to the swept mode."""

    n_t: int = 9
    base_n_s: int = 128
    max_n_s: int = 1025
    scale_grid: bool = True
    tol: float = 1e-8
    max_iter: int = 500
    resolvent_tol: float = 1e-6
    power_max_iter: int = 2000
    seed: int = 42
    workers: int = 1
    reference: ReferenceKind = ReferenceKind.DISCRETE
    min_slope: float = 0.9
    max_mode: int | None = None


def fit_loglog(epsilons: list[float], errors: list[float]) -> tuple[float, float, float]:
    """Least-squares line through (log eps, log error): slope, intercept, RMS residual."""
    x = np.log(np.asarray(epsilons, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return float(slope), float(intercept), residual


def _reference_mode(
    problem: StripProblem, n: int, settings: SweepSettings
) -> tuple[float, np.ndarray]:
    if settings.reference == ReferenceKind.ANALYTIC:
        psi0 = problem.grid.to_vector(sample_psi0(n, problem.grid))
        return curve_eigenvalue(n, problem.geometry.length), psi0
    pair = aligned_modes(
        problem.forms_flat, n, settings.tol, settings.max_iter, settings.seed
    )[n - 1]
    return pair.value, pair.vector


def _paired_mode(problem: StripProblem, n: int, settings: SweepSettings) -> EigenPair | None:
    # Runs inside pool workers: report degeneracy through the flag only.
    pair = aligned_modes(
        problem.forms_eps,
        n,
        settings.tol,
        settings.max_iter,
        settings.seed,
        warn_degenerate=False,
    )[n - 1]
    if pair.degenerate:
        logger.warning(
            "mode %d is degenerate at eps=%g; dropping this width from the sweep",
            n, problem.geometry.epsilon,
        )
        return None
    return pair


def measure(
    problem: StripProblem, n: int, observable: Observable, settings: SweepSettings
) -> float | None:
    """Error of ``observable`` for mode ``n``; None when the mode cannot be paired."""
    if observable == Observable.RESOLVENT_GAP:
        return resolvent_gap(
            problem.forms_eps,
            problem.forms_flat,
            problem.metric,
            tol=settings.resolvent_tol,
            max_iter=settings.power_max_iter,
            seed=settings.seed,
        ).norm_estimate

    pair = _paired_mode(problem, n, settings)
    if pair is None:
        return None
    ref_value, ref_vector = _reference_mode(problem, n, settings)
    if observable == Observable.EIGENVALUE_ERROR:
        return abs(pair.value - ref_value)

    # U_eps psi^eps lives in the flat L^2(Pi) of the reference
    diff = problem.root_f * pair.vector - ref_vector
    if observable == Observable.L2_ERROR:
        return float(np.sqrt(problem.forms_flat.inner(diff, diff)))
    if observable == Observable.SUP_ERROR:
        return float(np.max(np.abs(diff)))
    grid = problem.grid
    return float(np.max(np.abs(np.gradient(grid.to_grid(diff), grid.h_s, axis=1))))


def check_sweep_widths(
    geometry: StripGeometry, epsilons: list[float], max_mode: int
) -> None:
    """Raise unless the widths form a usable geometric sequence."""
    if len(epsilons) < MIN_POINTS:
        raise InsufficientData(
            f"a sweep needs at least {MIN_POINTS} widths, got {len(epsilons)}"
        )
    for a, b in zip(epsilons, epsilons[1:]):
        if b / a > MAX_RATIO + 1e-12:
            raise PreconditionViolated(
                f"widths must decrease geometrically with ratio <= 1/sqrt(2), "
                f"got {a} -> {b}",
                module="analysis",
            )
    limit = geometry.length / (2 * (max_mode - 1))
    for eps in epsilons:
        if eps >= limit:
            raise PreconditionViolated(
                f"eps = {eps} violates eps < L/(2(N-1)) = {limit:.6g} (N = {max_mode})",
                module="analysis",
            )
        radius = epsilon_tilde(geometry.with_epsilon(eps))
        if eps >= radius:
            raise PreconditionViolated(
                f"eps = {eps} is not below the validity radius {radius:.6g}",
                module="analysis",
            )


def scaled_node_count(
    length: float, constant: float, epsilon: float, settings: SweepSettings
) -> int:
    """Nodes along s with h_s^2 <= FLOOR_FRACTION * constant * eps, clamped."""
    if not settings.scale_grid or constant <= 0.0:
        return settings.base_n_s
    h = math.sqrt(FLOOR_FRACTION * constant * epsilon)
    n_s = math.ceil(length / h) + 1
    return int(min(max(n_s, settings.base_n_s), settings.max_n_s))


def sweep_convergence(
    geometry: StripGeometry,
    eps_list: list[float],
    n: int,
    observable: Observable,
    settings: SweepSettings | None = None,
) -> ConvergenceReport:
    """Measure ``observable`` for mode ``n`` at every width and fit its rate.

    The coarsest width is solved first on the base grid to bootstrap the
    constant C of the expected error C eps; every width is then solved on a
    grid with h_s^2 <= 0.1 C eps. Widths are processed concurrently and
    reported in input order.
    """
    settings = settings or SweepSettings()
    max_mode = settings.max_mode or n
    epsilons = [float(e) for e in eps_list]
    check_sweep_widths(geometry, epsilons, max_mode)

    def run(eps: float, n_s: int) -> float | None:
        problem = build_problem(geometry.with_epsilon(eps), n_s, settings.n_t)
        error = measure(problem, n, observable, settings)
        logger.info(
            "%s %s n=%d eps=%g n_s=%d: %s",
            geometry.name, observable.value, n, eps, n_s, error,
        )
        return error

    bootstrap = run(epsilons[0], settings.base_n_s)
    constant = (bootstrap or 0.0) / epsilons[0]
    node_counts = [
        scaled_node_count(geometry.length, constant, eps, settings) for eps in epsilons
    ]

    def run_point(k: int) -> float | None:
        if k == 0 and node_counts[0] == settings.base_n_s:
            return bootstrap
        return run(epsilons[k], node_counts[k])

    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        errors = list(pool.map(run_point, range(len(epsilons))))

    points = [
        ConvergencePoint(epsilon=e, error=err, n_s=ns)
        for e, err, ns in zip(epsilons, errors, node_counts)
        if err is not None
    ]
    if len(points) < MIN_POINTS:
        raise InsufficientData(
            f"only {len(points)} widths could be paired for mode {n}; need {MIN_POINTS}"
        )

    report = ConvergenceReport(
        observable=observable.value,
        geometry=geometry.name,
        n=n,
        reference=settings.reference.value,
        points=points,
        status="exact, fit skipped",
        min_slope=settings.min_slope,
    )
    if any(p.error <= 0.0 for p in points):
        return report

    slope, intercept, residual = fit_loglog(
        [p.epsilon for p in points], [p.error for p in points]
    )
    floor = points[-1].error >= STAGNATION_RATIO * points[-2].error
    if floor:
        warnings.warn(
            f"{observable.value} errors stagnate at the smallest widths "
            f"({points[-2].error:.3e} -> {points[-1].error:.3e}); refine the grid",
            DiscretizationFloor,
            stacklevel=2,
        )
    return report.model_copy(
        update={
            "status": "fitted",
            "slope": slope,
            "intercept": intercept,
            "fit_residual": residual,
            "floor_warning": floor,
        }
    )
