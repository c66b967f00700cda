"""Localization of eigenfunction extrema for modes 2..N."""

import logging

from ..analysis.extrema import check_location, location_onset
from ..models.reports import LocationStudy
from ..output import dump_grid, indexed_name, write_json
from ..pipeline import aligned_modes, build_problem
from .base import BaseTask, RunContext, TaskResult, width_policies

logger = logging.getLogger(__name__)


class HotspotsTask(BaseTask):
    """Write ``hotspots_n{n}.json`` and ``psi_n{n}.txt`` dumps for every mode n >= 2."""

    name = "hotspots"

    def run(self, ctx: RunContext) -> TaskResult:
        out = ctx.prepare_output()
        cfg = ctx.config
        tol = cfg.tolerances
        total = len(ctx.epsilons)
        modes = range(2, ctx.max_mode + 1)
        reports = {n: [] for n in modes}
        result = TaskResult()

        for k, eps in enumerate(ctx.epsilons):
            problem = build_problem(ctx.geometry(eps), cfg.grid.n_s, cfg.grid.n_t)
            pairs = aligned_modes(
                problem.forms_eps, ctx.max_mode, tol.solver, tol.max_iter, cfg.seed
            )
            for n in modes:
                pair = pairs[n - 1]
                report = check_location(
                    pair,
                    n,
                    ctx.delta(n),
                    problem.grid,
                    epsilon=eps,
                    max_mode=ctx.max_mode,
                    flat_top_tol=tol.flat_top,
                    grad_tol=tol.grad,
                )
                if not report.passed:
                    logger.info("mode %d fails localization at eps=%g", n, eps)
                reports[n].append(report)
                path = out / indexed_name(f"psi_n{n}", "txt", k, total)
                result.files.append(dump_grid(problem.grid.to_grid(pair.vector), path))

        for n, mode_reports in reports.items():
            study = LocationStudy(
                geometry=ctx.geometry_name,
                n=n,
                reports=mode_reports,
                onset_epsilon=location_onset(mode_reports),
            )
            result.files.append(write_json(study, out / f"hotspots_n{n}.json"))
            verdict = "pass" if study.passed else "FAIL"
            if n == 2:
                hot = all(r.boundary_verdict for r in mode_reports)
                verdict += f", boundary_verdict = {hot}"
            result.rows.append((f"n = {n}", verdict))
            result.passed = result.passed and study.passed
        return result

    def validate_policies(self, ctx: RunContext) -> list[str]:
        return width_policies(ctx)
