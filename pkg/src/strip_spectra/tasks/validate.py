"""Geometry validity: C_eps, eps_tilde, the Jacobian sign and f asymptotics."""

import logging

from ..analysis.diagnostics import uniform_class_check
from ..errors import EvaluationFailure
from ..geometry.asymptotics import MIN_FAMILY, verify_f_asymptotics
from ..geometry.bounds import validate_geometry
from ..models.reports import GeometryValidation
from ..output import dump_grid, indexed_name, write_json
from .base import BaseTask, RunContext, TaskResult

logger = logging.getLogger(__name__)


class ValidateTask(BaseTask):
    """Report validity of the configured geometry at every width."""

    name = "validate"

    def run(self, ctx: RunContext) -> TaskResult:
        out = ctx.prepare_output()
        grid = ctx.config.grid
        result = TaskResult()

        reports = []
        metrics = []
        for k, eps in enumerate(ctx.epsilons):
            report, metric = validate_geometry(ctx.geometry(eps), grid.n_s, grid.n_t)
            reports.append(report)
            if metric is not None:
                metrics.append(metric)
                path = out / indexed_name("metric", "txt", k, len(ctx.epsilons))
                result.files.append(dump_grid(metric.f, path))
            result.rows.append(
                (
                    f"eps = {eps:g}",
                    f"C_eps = {report.c_eps if report.c_eps is not None else 'n/a'}, "
                    f"eps_tilde = {report.eps_tilde:.6g}, valid = {report.valid}",
                )
            )

        first = ctx.geometry(ctx.epsilons[0])
        try:
            uniform = uniform_class_check(first)
        except EvaluationFailure as exc:
            logger.warning("uniform-class bound unavailable: %s", exc)
            uniform = None

        asymptotics = []
        widths = [m.epsilon for m in metrics]
        decreasing = all(b < a for a, b in zip(widths, widths[1:]))
        if len(metrics) >= MIN_FAMILY and len(metrics) == len(reports) and decreasing:
            asymptotics = verify_f_asymptotics(metrics, first)
            for rate in asymptotics:
                slope = "degenerate" if rate.slope is None else f"{rate.slope:.3f}"
                result.rows.append((f"slope {rate.observable}", slope))

        validation = GeometryValidation(
            run_id=ctx.run_id,
            geometry=ctx.geometry_name,
            reports=reports,
            uniform_class=uniform,
            asymptotics=asymptotics,
        )
        result.files.append(write_json(validation, out / "validity.json"))
        result.passed = validation.valid
        return result

    def validate_policies(self, ctx: RunContext) -> list[str]:
        """Validity is what this task reports, so nothing is refused up front."""
        return []
