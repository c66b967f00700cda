"""Small-width asymptotics of f_eps and its derivatives."""

import numpy as np

from ..errors import InsufficientData, PreconditionViolated
from ..models.reports import AsymptoticRate
from .jacobi import MetricField
from .strip import StripGeometry

MIN_FAMILY = 4

# observable -> (expected order in eps, extractor)
OBSERVABLES = {
    "f_minus_one": (1, lambda m: m.f - 1.0),
    "df_ds": (1, lambda m: m.df_ds),
    "df_dt": (1, lambda m: m.df_dt),
    "d2f_dt2": (2, lambda m: m.d2f_dt2),
}


def loglog_slope(x: list[float], y: list[float]) -> float:
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def df_dt_bound(epsilon: float, kappa_sup: float, gauss_sup: float) -> float:
    """Upper bound eps k + eps^2 K (1 + eps k) / (1 - eps^2 K / 2) on sup|f_t|."""
    half = 0.5 * epsilon**2 * gauss_sup
    return epsilon * kappa_sup + epsilon**2 * gauss_sup * (1.0 + epsilon * kappa_sup) / (1.0 - half)


def verify_f_asymptotics(
    family: list[MetricField], geometry: StripGeometry | None = None
) -> list[AsymptoticRate]:
    """Fit log-log slopes of sup|f - 1|, sup|f_s|, sup|f_t| and sup|f_tt|.

    A row whose norms vanish at some width is reported as degenerate with no
    slope. When ``geometry`` is given, the f_t row also records whether the
    explicit derivative bound held at every width.
    """
    if len(family) < MIN_FAMILY:
        raise InsufficientData(
            f"need at least {MIN_FAMILY} metric fields, got {len(family)}",
            module="geometry",
        )
    epsilons = [m.epsilon for m in family]
    if any(b >= a for a, b in zip(epsilons, epsilons[1:])):
        raise PreconditionViolated(f"widths must decrease strictly, got {epsilons}")
    if len({m.geometry_name for m in family}) != 1:
        raise PreconditionViolated("metric fields come from different geometries")

    rows = []
    for name, (order, extract) in OBSERVABLES.items():
        norms = [float(np.max(np.abs(extract(m)))) for m in family]
        degenerate = any(n == 0.0 for n in norms)
        within_bound = None
        if name == "df_dt" and geometry is not None:
            k, g = geometry.kappa_sup(), geometry.gauss_sup()
            within_bound = all(
                n <= df_dt_bound(e, k, g) + 1e-12 for e, n in zip(epsilons, norms)
            )
        rows.append(
            AsymptoticRate(
                observable=name,
                expected_order=order,
                epsilons=epsilons,
                sup_norms=norms,
                slope=None if degenerate else loglog_slope(epsilons, norms),
                degenerate=degenerate,
                within_bound=within_bound,
            )
        )
    return rows
