"""Epsilon-sweep convergence rates for the configured observables."""

from ..analysis.convergence import SweepSettings, check_sweep_widths, sweep_convergence
from ..errors import InsufficientData, PreconditionViolated
from ..output import write_csv, write_json
from .base import BaseTask, RunContext, TaskResult

HEADER = ("run_id", "geometry", "observable", "n", "epsilon", "n_s", "error")


def sweep_settings(ctx: RunContext) -> SweepSettings:
    cfg = ctx.config
    return SweepSettings(
        n_t=cfg.grid.n_t,
        base_n_s=cfg.grid.n_s,
        max_n_s=cfg.grid.max_n_s,
        scale_grid=cfg.sweep.scale_grid,
        tol=cfg.tolerances.solver,
        max_iter=cfg.tolerances.max_iter,
        resolvent_tol=cfg.tolerances.resolvent,
        power_max_iter=cfg.tolerances.power_max_iter,
        seed=cfg.seed,
        workers=cfg.sweep.workers,
        reference=cfg.sweep.reference,
        min_slope=cfg.sweep.min_slope,
        max_mode=cfg.max_mode,
    )


class SweepTask(BaseTask):
    """Write ``sweep_{observable}.json`` and ``.csv`` for each observable."""

    name = "sweep"

    def run(self, ctx: RunContext) -> TaskResult:
        out = ctx.prepare_output()
        settings = sweep_settings(ctx)
        geometry = ctx.geometry(ctx.epsilons[0])
        n = ctx.config.sweep.mode
        result = TaskResult()

        for observable in ctx.config.sweep.observables:
            report = sweep_convergence(geometry, list(ctx.epsilons), n, observable, settings)
            name = observable.value
            rows = [
                (ctx.run_id, report.geometry, name, n, p.epsilon, p.n_s, p.error)
                for p in report.points
            ]
            result.files.append(write_json(report, out / f"sweep_{name}.json"))
            result.files.append(write_csv(out / f"sweep_{name}.csv", HEADER, rows))

            if report.slope is None:
                summary = report.status
            else:
                summary = f"slope {report.slope:.3f} (min {report.min_slope})"
                if report.floor_warning:
                    summary += ", discretization floor"
            result.rows.append((name, summary))
            result.passed = result.passed and report.verdict
        return result

    def validate_policies(self, ctx: RunContext) -> list[str]:
        try:
            check_sweep_widths(
                ctx.geometry(ctx.epsilons[0]), list(ctx.epsilons), ctx.max_mode
            )
        except (InsufficientData, PreconditionViolated) as exc:
            return [str(exc)]
        return []
