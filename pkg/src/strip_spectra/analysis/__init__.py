"""Extrema localization checks, convergence sweeps and geometry diagnostics."""

from .convergence import SweepSettings, fit_loglog, measure, sweep_convergence
from .diagnostics import uniform_class_check
from .extrema import (
    StationaryPoint,
    check_location,
    default_delta,
    locate_extrema,
    location_onset,
    stationary_points_1d,
)

__all__ = [
    "SweepSettings",
    "fit_loglog",
    "measure",
    "sweep_convergence",
    "uniform_class_check",
    "StationaryPoint",
    "check_location",
    "default_delta",
    "locate_extrema",
    "location_onset",
    "stationary_points_1d",
]
