"""Tests for run configuration models."""

import math

import pytest
from pydantic import ValidationError

from strip_spectra.models import (
    GeometryConfig,
    GeometryPreset,
    Observable,
    ReferenceKind,
    RunConfig,
)


class TestRunConfig:
    """Tests for the root configuration."""

    def test_defaults(self):
        """Only epsilon is required."""
        config = RunConfig(epsilon=0.1)

        assert config.geometry.preset == GeometryPreset.FLAT_LINE
        assert config.geometry.length == pytest.approx(math.pi)
        assert config.max_mode == 4
        assert config.grid.n_t == 9
        assert config.sweep.reference == ReferenceKind.DISCRETE
        assert Observable.RESOLVENT_GAP in config.sweep.observables

    def test_epsilon_list_normalized(self):
        """A list of widths becomes the epsilons tuple."""
        config = RunConfig(epsilon=[0.2, 0.1])

        assert config.epsilons == (0.2, 0.1)

    def test_mode_separation_message(self):
        """Too wide a strip cites eps < L/(2(N-1))."""
        with pytest.raises(ValidationError, match=r"L/\(2\(N-1\)\)"):
            RunConfig(epsilon=0.6, max_mode=4)

    def test_non_positive_epsilon(self):
        """Widths must be positive."""
        with pytest.raises(ValidationError):
            RunConfig(epsilon=[0.1, -0.05])

    def test_max_mode_bounds(self):
        """N lies in 2..12."""
        with pytest.raises(ValidationError):
            RunConfig(epsilon=0.01, max_mode=1)
        with pytest.raises(ValidationError):
            RunConfig(epsilon=0.01, max_mode=13)

    def test_even_n_t_rejected(self):
        """t = 0 must be a node."""
        with pytest.raises(ValidationError):
            RunConfig(epsilon=0.1, grid={"n_t": 10})

    def test_solver_tolerance_range(self):
        """Solver tolerance lies in [1e-12, 1e-6]."""
        with pytest.raises(ValidationError):
            RunConfig(epsilon=0.1, tolerances={"solver": 1e-4})

    def test_delta_window(self):
        """An explicit delta must be below L/(4(N-1))."""
        with pytest.raises(ValidationError):
            RunConfig(epsilon=0.1, max_mode=3, delta=1.0)
        assert RunConfig(epsilon=0.1, max_mode=3, delta=0.2).delta == 0.2

    def test_sweep_mode_within_max_mode(self):
        """The swept mode must be one of the first N."""
        with pytest.raises(ValidationError):
            RunConfig(epsilon=0.1, max_mode=2, sweep={"mode": 3})


class TestGeometryConfig:
    """Tests for geometry selection."""

    def test_tables_clear_default_preset(self):
        """Custom tables replace the default preset."""
        config = GeometryConfig(
            kappa_table={"s": [0.0, 1.0, 2.0, 3.2], "values": [1.0, 1.0, 1.0, 1.0]}
        )

        assert config.preset is None
        assert config.name == "custom"

    def test_preset_and_tables_conflict(self):
        """An explicit preset cannot be combined with tables."""
        with pytest.raises(ValidationError):
            GeometryConfig(
                preset="flat-arc",
                kappa_table={"s": [0.0, 1.0, 2.0, 3.2], "values": [1.0, 1.0, 1.0, 1.0]},
            )

    def test_table_axes_must_increase(self):
        """Table abscissae are strictly increasing."""
        with pytest.raises(ValidationError):
            GeometryConfig(kappa_table={"s": [0.0, 2.0, 1.0, 3.0], "values": [0.0] * 4})

    def test_gauss_table_shape(self):
        """Gauss values must be len(s) x len(u)."""
        with pytest.raises(ValidationError):
            GeometryConfig(
                gauss_table={
                    "s": [0.0, 1.0, 2.0, 3.0],
                    "u": [-0.1, 0.0, 0.05, 0.1],
                    "values": [[0.0] * 3] * 4,
                }
            )

    def test_short_kappa_table_rejected(self):
        """A kappa table must span the whole curve [0, L]."""
        with pytest.raises(ValidationError, match="does not span"):
            RunConfig(
                geometry={"kappa_table": {"s": [0.0, 0.3, 0.6, 1.0], "values": [0.0, 1.0, 0.0, 1.0]}},
                epsilon=0.01,
            )

    def test_short_gauss_table_rejected(self):
        """Gauss tables are held to the same s coverage."""
        with pytest.raises(ValidationError, match="does not span"):
            GeometryConfig(
                length=4.0,
                gauss_table={
                    "s": [0.0, 1.0, 2.0, 3.2],
                    "u": [-0.1, 0.0, 0.05, 0.1],
                    "values": [[1.0] * 4] * 4,
                },
            )


class TestGridConfig:
    """Tests for grid resolution limits."""

    def test_coarse_n_s_rejected(self):
        """Forms are assembled on at least eight nodes along the curve."""
        with pytest.raises(ValidationError):
            RunConfig(epsilon=0.1, grid={"n_s": 7})
