"""Tests for extrema localization, convergence sweeps and diagnostics."""

import math
import warnings
from dataclasses import replace

import numpy as np
import pytest

from strip_spectra.analysis import (
    SweepSettings,
    check_location,
    default_delta,
    fit_loglog,
    locate_extrema,
    location_onset,
    measure,
    stationary_points_1d,
    sweep_convergence,
    uniform_class_check,
)
from strip_spectra.analysis import convergence
from strip_spectra.analysis.convergence import check_sweep_widths, scaled_node_count
from strip_spectra.errors import (
    DegenerateRange,
    DiscretizationFloor,
    InsufficientData,
    PreconditionViolated,
)
from strip_spectra.models import ExtremaReport, Observable, ReferenceKind
from strip_spectra.pipeline import aligned_modes

SWEEP = [0.2, 0.1, 0.05, 0.025]


def columns(nodes):
    return {i for i, _ in nodes}


def make_report(epsilon: float, passed: bool) -> ExtremaReport:
    return ExtremaReport(
        n=2,
        epsilon=epsilon,
        delta=0.1,
        max_value=1.0,
        min_value=-1.0,
        max_nodes=[(0, 0)],
        min_nodes=[(10, 0)],
        stationary_nodes=[],
        forbidden_extrema=[],
        verdict_max=passed,
        verdict_min=True,
        verdict_stationary=True,
        verdict_forbidden=True,
        boundary_verdict=True,
    )


class TestStationaryPoints:
    """Tests for the interval stationary points s_m = m L / (n - 1)."""

    def test_second_mode(self):
        """n = 2, L = pi: max at 0, min at pi."""
        points = stationary_points_1d(2, math.pi)

        assert [p.s for p in points] == pytest.approx([0.0, math.pi])
        assert [p.kind for p in points] == ["max", "min"]

    def test_third_mode(self):
        """n = 3, L = pi: max, min, max at 0, pi/2, pi."""
        points = stationary_points_1d(3, math.pi)

        assert [p.s for p in points] == pytest.approx([0.0, math.pi / 2, math.pi])
        assert [p.kind for p in points] == ["max", "min", "max"]

    def test_fourth_mode_unit_length(self):
        """n = 4, L = 1: thirds, alternating."""
        points = stationary_points_1d(4, 1.0)

        assert [p.s for p in points] == pytest.approx([0.0, 1 / 3, 2 / 3, 1.0])
        assert [p.kind for p in points] == ["max", "min", "max", "min"]

    @pytest.mark.parametrize("n", range(2, 9))
    def test_labels_alternate_from_max(self, n):
        """Even m are maxima and odd m minima for every n."""
        kinds = [p.kind for p in stationary_points_1d(n, 2.0)]

        assert kinds == ["max" if m % 2 == 0 else "min" for m in range(n)]

    def test_first_mode_rejected(self):
        """The constant mode has no stationary structure."""
        with pytest.raises(ValueError):
            stationary_points_1d(1, 1.0)

    def test_default_delta_respects_window(self):
        """The default band half-width stays below L/(4(N-1))."""
        for top in range(2, 8):
            for n in range(2, top + 1):
                assert 0.0 < default_delta(n, math.pi, top) < math.pi / (4 * (top - 1))
        assert default_delta(3, math.pi) == pytest.approx(0.05 * math.pi)


class TestLocateExtrema:
    """Tests for the discrete extrema sets."""

    def test_second_mode_extrema_on_end_columns(self, sampled_mode):
        """psi_2^0: maxima on the s = 0 column, minima on the s = L column."""
        grid, psi = sampled_mode(2)
        max_nodes, min_nodes = locate_extrema(psi, grid)

        assert columns(max_nodes) == {0}
        assert columns(min_nodes) == {grid.n_s - 1}
        assert len(max_nodes) == grid.n_t

    def test_constant_mode_raises(self, sampled_mode):
        """A constant grid function has no extrema."""
        grid, psi = sampled_mode(1)

        with pytest.raises(DegenerateRange):
            locate_extrema(psi, grid)

    @pytest.mark.parametrize("scale", [0.5, 3.0])
    def test_positive_scaling_invariance(self, sampled_mode, scale):
        """Multiplying by c > 0 keeps both node sets."""
        grid, psi = sampled_mode(3)

        assert locate_extrema(scale * psi, grid) == locate_extrema(psi, grid)

    def test_negative_scaling_swaps(self, sampled_mode):
        """Multiplying by c < 0 swaps the max and min node sets."""
        grid, psi = sampled_mode(3)
        max_nodes, min_nodes = locate_extrema(psi, grid)

        assert locate_extrema(-2.0 * psi, grid) == (min_nodes, max_nodes)

    def test_max_nodes_attain_global_max(self, sampled_mode):
        """The reported max nodes contain the exact grid maximum."""
        grid, psi = sampled_mode(4)
        values = grid.to_grid(psi)
        max_nodes, _ = locate_extrema(psi, grid)

        assert max(values[j, i] for i, j in max_nodes) == values.max()


class TestCheckLocation:
    """Tests for the localization verdicts."""

    @pytest.mark.parametrize("n", range(2, 7))
    @pytest.mark.parametrize("fraction", [1 / 6, 2 / 6, 3 / 6, 4 / 6, 5 / 6])
    def test_sampled_modes_pass(self, sampled_mode, n, fraction):
        """Exactly sampled psi_n^0 passes for n <= 6 and five deltas."""
        grid, psi = sampled_mode(n)
        delta = fraction * math.pi / (4 * 5)
        report = check_location(psi, n, delta, grid, max_mode=6)

        assert report.verdict_max and report.verdict_min
        assert report.stationary_nodes == []
        assert report.forbidden_extrema == []
        assert report.passed

    def test_second_mode_boundary_verdict(self, sampled_mode):
        """Only n = 2 carries the boundary verdict."""
        grid, psi2 = sampled_mode(2)
        _, psi3 = sampled_mode(3)

        assert check_location(psi2, 2, 0.1, grid, max_mode=3).boundary_verdict is True
        assert check_location(psi3, 3, 0.1, grid, max_mode=3).boundary_verdict is None

    def test_delta_outside_window_rejected(self, sampled_mode):
        """delta must lie in (0, L/(4(N-1)))."""
        grid, psi = sampled_mode(2)

        with pytest.raises(PreconditionViolated):
            check_location(psi, 2, math.pi / 4, grid)

    def test_wrong_sign_fails_verdicts(self, sampled_mode):
        """A mode with flipped sign puts its maxima in odd sets."""
        grid, psi = sampled_mode(3)
        report = check_location(-psi, 3, 0.1, grid, max_mode=3)

        assert not report.verdict_max
        assert not report.passed

    def test_location_onset(self):
        """The onset is the largest width below which everything passes."""
        reports = [make_report(0.1, False), make_report(0.05, True), make_report(0.025, True)]

        assert location_onset(reports) == 0.05
        assert location_onset([make_report(0.025, False)]) is None


class TestSolvedLocation:
    """Localization of computed eigenfunctions on thin strips."""

    @pytest.mark.parametrize("preset", ["flat-arc", "sphere-geodesic", "flat-sine"])
    def test_hot_spots(self, make_problem, preset):
        """n = 2 at eps = 0.025: extrema only on the end columns."""
        problem = make_problem(preset, 0.025)
        pair = aligned_modes(problem.forms_eps, 2)[1]
        report = check_location(pair, 2, default_delta(2, math.pi), problem.grid, epsilon=0.025)

        assert columns(report.max_nodes) == {0}
        assert columns(report.min_nodes) == {problem.grid.n_s - 1}
        assert report.boundary_verdict
        assert report.passed

    @pytest.mark.parametrize("preset", ["flat-arc", "sphere-geodesic", "flat-sine"])
    @pytest.mark.parametrize("n", [3, 4])
    def test_higher_modes_localize(self, make_problem, preset, n):
        """n = 3, 4 at eps = 0.025 with delta = 0.1 L / (n - 1)."""
        problem = make_problem(preset, 0.025)
        pair = aligned_modes(problem.forms_eps, 4)[n - 1]
        delta = 0.1 * math.pi / (n - 1)
        report = check_location(
            pair, n, delta, problem.grid, epsilon=0.025, max_mode=4,
            mass=problem.forms_eps.mass,
        )

        assert report.verdict_max and report.verdict_min
        assert report.stationary_nodes == []
        assert report.forbidden_extrema == []

    def test_sphere_geodesic_third_mode_minimum(self, make_problem):
        """The minimum of psi_3 lies in the band around L/2."""
        problem = make_problem("sphere-geodesic", 0.05)
        pair = aligned_modes(problem.forms_eps, 3)[2]
        report = check_location(pair, 3, 0.1 * math.pi, problem.grid, max_mode=3)
        s = problem.grid.s

        assert all(abs(s[i] - math.pi / 2) <= 0.1 * math.pi for i, _ in report.min_nodes)
        assert report.stationary_nodes == []


class TestFit:
    """Tests for the log-log least-squares fit."""

    def test_synthetic_linear_errors(self):
        """e(eps) = 3 eps has slope one."""
        slope, intercept, residual = fit_loglog(SWEEP, [3 * e for e in SWEEP])

        assert slope == pytest.approx(1.0, abs=1e-10)
        assert intercept == pytest.approx(math.log(3.0), abs=1e-10)
        assert residual < 1e-10

    def test_scaled_node_count(self):
        """h_s^2 <= 0.1 C eps, clamped to the base and maximum sizes."""
        settings = SweepSettings(base_n_s=8, max_n_s=1025)

        assert scaled_node_count(math.pi, 1.0, 0.1, settings) == 33
        assert scaled_node_count(math.pi, 0.0, 0.1, settings) == 8
        assert scaled_node_count(math.pi, 1e-6, 0.1, settings) == 1025
        assert scaled_node_count(math.pi, 1.0, 0.1, SweepSettings(scale_grid=False)) == 128


class TestSweepPreconditions:
    """Tests for the width-sequence checks."""

    def test_needs_four_widths(self, make_geometry):
        """Three widths cannot be fitted."""
        with pytest.raises(InsufficientData):
            check_sweep_widths(make_geometry("flat-arc", 0.2), SWEEP[:3], 2)

    def test_ratio_must_be_geometric(self, make_geometry):
        """Successive widths shrink by at least 1/sqrt(2)."""
        with pytest.raises(PreconditionViolated):
            check_sweep_widths(make_geometry("flat-arc", 0.2), [0.2, 0.18, 0.09, 0.045], 2)

    def test_mode_separation_condition(self, make_geometry):
        """The message cites eps < L/(2(N-1))."""
        with pytest.raises(PreconditionViolated, match=r"L/\(2\(N-1\)\)"):
            check_sweep_widths(make_geometry("flat-line", 0.8), [0.8, 0.4, 0.2, 0.1], 4)

    def test_validity_radius(self, make_geometry):
        """Widths must stay below eps_tilde."""
        geom = make_geometry("flat-arc", 0.2, curvature=4.0)
        with pytest.raises(PreconditionViolated):
            check_sweep_widths(geom, [0.4, 0.2, 0.1, 0.05], 2)


class TestSweepBookkeeping:
    """Sweep assembly with a stubbed measurement."""

    settings = SweepSettings(base_n_s=16, n_t=3, scale_grid=False)

    def stub(self, monkeypatch, table):
        def fake(problem, n, observable, settings):
            return table[problem.geometry.epsilon]

        monkeypatch.setattr(convergence, "measure", fake)

    def test_floor_warning(self, monkeypatch, make_geometry):
        """Stagnation at the two smallest widths warns."""
        self.stub(monkeypatch, {0.2: 0.4, 0.1: 0.2, 0.05: 0.1, 0.025: 0.099})

        with pytest.warns(DiscretizationFloor):
            report = sweep_convergence(
                make_geometry("flat-line", 0.2), SWEEP, 2, Observable.L2_ERROR, self.settings
            )
        assert report.floor_warning
        assert report.status == "fitted"

    def test_degenerate_width_dropped(self, monkeypatch, make_geometry):
        """An unpaired width is left out of the fit."""
        widths = SWEEP + [0.0125]
        self.stub(
            monkeypatch, {0.2: 0.2, 0.1: 0.1, 0.05: None, 0.025: 0.025, 0.0125: 0.0125}
        )
        report = sweep_convergence(
            make_geometry("flat-line", 0.2), widths, 2, Observable.L2_ERROR, self.settings
        )

        assert [p.epsilon for p in report.points] == [0.2, 0.1, 0.025, 0.0125]
        assert report.slope == pytest.approx(1.0, abs=1e-10)
        assert report.verdict

    def test_too_many_dropped(self, monkeypatch, make_geometry):
        """Fewer than four paired widths is insufficient."""
        self.stub(monkeypatch, {0.2: 0.2, 0.1: None, 0.05: 0.05, 0.025: 0.025})

        with pytest.raises(InsufficientData):
            sweep_convergence(
                make_geometry("flat-line", 0.2), SWEEP, 2, Observable.L2_ERROR, self.settings
            )


class TestSweepWarnings:
    """Warning state around parallel sweeps."""

    def test_parallel_sweep_leaves_warning_filters(self, make_geometry):
        """Pool workers do not touch the process-wide warning filters."""
        before = list(warnings.filters)
        sweep_convergence(
            make_geometry("flat-arc", 0.2), SWEEP, 2, Observable.L2_ERROR,
            SweepSettings(base_n_s=64, n_t=5, scale_grid=False, workers=4),
        )

        assert list(warnings.filters) == before


class TestMeasure:
    """Tests for single-width observables."""

    def test_flat_line_discrete_reference_is_exact(self, make_problem):
        """H_eps = H_0 on the same grid gives zero error."""
        problem = make_problem("flat-line", 0.1, n_s=65, n_t=5)
        settings = SweepSettings()

        assert measure(problem, 2, Observable.EIGENVALUE_ERROR, settings) == 0.0
        assert measure(problem, 2, Observable.L2_ERROR, settings) == 0.0

    def test_flat_line_analytic_reference_sees_discretization(self, make_problem):
        """Against lambda_2^0 = 1 only the O(h^2) error remains."""
        problem = make_problem("flat-line", 0.1, n_s=129, n_t=5)
        settings = SweepSettings(reference=ReferenceKind.ANALYTIC)
        error = measure(problem, 2, Observable.EIGENVALUE_ERROR, settings)

        assert 0.0 < error < 1e-3


@pytest.mark.slow
class TestConvergenceSweeps:
    """Epsilon sweeps against the O(eps) rates."""

    settings = SweepSettings(base_n_s=128, n_t=9)

    @pytest.mark.parametrize(
        "observable",
        [Observable.EIGENVALUE_ERROR, Observable.L2_ERROR, Observable.RESOLVENT_GAP],
    )
    def test_flat_line_is_exact(self, make_geometry, observable):
        """kappa = K = 0: every error vanishes and the fit is skipped."""
        report = sweep_convergence(
            make_geometry("flat-line", 0.2), SWEEP, 2, observable,
            SweepSettings(base_n_s=65, n_t=5),
        )

        assert report.status == "exact, fit skipped"
        assert report.slope is None
        assert all(p.error <= 1e-12 for p in report.points)

    @pytest.mark.parametrize(
        "observable",
        [
            Observable.EIGENVALUE_ERROR,
            Observable.L2_ERROR,
            Observable.SUP_ERROR,
            Observable.RESOLVENT_GAP,
        ],
    )
    def test_flat_arc_rates(self, make_geometry, observable):
        """Flat arc, n = 2: fitted slopes are at least 0.9."""
        report = sweep_convergence(
            make_geometry("flat-arc", 0.2), SWEEP, 2, observable, self.settings
        )

        assert report.status == "fitted"
        assert report.slope >= 0.9
        assert report.verdict
        assert [p.epsilon for p in report.points] == SWEEP

    @pytest.mark.parametrize(
        "observable",
        [Observable.EIGENVALUE_ERROR, Observable.L2_ERROR, Observable.SUP_ERROR],
    )
    def test_flat_arc_rates_against_analytic_modes(self, make_geometry, observable):
        """Measured against lambda_n^0 and psi_n^0 the slopes are still at least 0.9."""
        report = sweep_convergence(
            make_geometry("flat-arc", 0.2), SWEEP, 2, observable,
            replace(self.settings, reference=ReferenceKind.ANALYTIC),
        )

        assert report.status == "fitted"
        assert report.slope >= 0.9
        assert report.verdict

    @pytest.mark.parametrize("reference", [ReferenceKind.DISCRETE, ReferenceKind.ANALYTIC])
    def test_flat_arc_gradient_rate(self, make_geometry, reference):
        """sup |d/ds (U psi^eps - psi^0)| decays at first order."""
        report = sweep_convergence(
            make_geometry("flat-arc", 0.2), SWEEP, 2, Observable.SUP_GRAD_S_ERROR,
            replace(self.settings, reference=reference),
        )

        assert report.slope >= 0.9
        assert report.verdict

    def test_flat_arc_slope_stable_under_refinement(self, make_geometry):
        """Two grid resolutions give eigenvalue slopes within 0.05."""
        geom = make_geometry("flat-arc", 0.2)
        coarse = sweep_convergence(
            geom, SWEEP, 2, Observable.EIGENVALUE_ERROR,
            SweepSettings(base_n_s=128, n_t=9, scale_grid=False),
        )
        fine = sweep_convergence(
            geom, SWEEP, 2, Observable.EIGENVALUE_ERROR,
            SweepSettings(base_n_s=256, n_t=9, scale_grid=False),
        )

        assert abs(coarse.slope - fine.slope) < 0.05

    def test_sphere_geodesic_l2_rate(self, make_geometry):
        """Sphere geodesic, n = 2: L2 slope at least 0.9."""
        report = sweep_convergence(
            make_geometry("sphere-geodesic", 0.2), SWEEP, 2, Observable.L2_ERROR, self.settings
        )

        assert report.slope >= 0.9

    def test_parallel_sweep_matches_serial(self, make_geometry):
        """Worker count does not change the report."""
        geom = make_geometry("flat-arc", 0.2)
        serial = sweep_convergence(
            geom, SWEEP, 2, Observable.EIGENVALUE_ERROR, SweepSettings(base_n_s=64, n_t=5)
        )
        parallel = sweep_convergence(
            geom, SWEEP, 2, Observable.EIGENVALUE_ERROR,
            SweepSettings(base_n_s=64, n_t=5, workers=4),
        )

        assert serial == parallel


class TestUniformClass:
    """Tests for the uniform-class diagnostic."""

    def test_flat_arc_bound(self, make_geometry):
        """Constant kappa = 1 and K = 0: the bound is one."""
        report = uniform_class_check(make_geometry("flat-arc", 0.1))

        assert report.bound == pytest.approx(1.0)
        assert report.length == pytest.approx(math.pi)

    def test_flat_sine_bound(self, make_geometry):
        """kappa = sin(s) on L = 2 pi: sup 2(|sin| + |cos|) = 2 sqrt(2)."""
        report = uniform_class_check(make_geometry("flat-sine", 0.1, length=2 * math.pi))

        assert report.bound == pytest.approx(2 * math.sqrt(2), rel=1e-4)

    def test_sphere_geodesic_bound(self, make_geometry):
        """kappa = 0 and K = 1: the bound is one."""
        report = uniform_class_check(make_geometry("sphere-geodesic", 0.1))

        assert report.bound == pytest.approx(1.0)
        assert np.isfinite(report.bound)
