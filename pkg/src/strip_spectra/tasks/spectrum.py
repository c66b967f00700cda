"""Smallest eigenvalues of H_eps at every configured width."""

from ..eigen.solver import solve_smallest
from ..operator.assembly import export_triplets
from ..output import dump_grid, indexed_name, write_csv
from ..pipeline import build_problem
from .base import BaseTask, RunContext, TaskResult, width_policies

HEADER = ("run_id", "geometry", "epsilon", "n", "lambda", "residual", "degenerate_flag")


class SpectrumTask(BaseTask):
    """Write ``spectrum.csv`` with lambda_1..lambda_N per width."""

    name = "spectrum"

    def run(self, ctx: RunContext) -> TaskResult:
        out = ctx.prepare_output()
        cfg = ctx.config
        total = len(ctx.epsilons)
        result = TaskResult()

        rows = []
        for k, eps in enumerate(ctx.epsilons):
            problem = build_problem(ctx.geometry(eps), cfg.grid.n_s, cfg.grid.n_t)
            pairs = solve_smallest(
                problem.forms_eps,
                ctx.max_mode,
                tol=cfg.tolerances.solver,
                max_iter=cfg.tolerances.max_iter,
                seed=cfg.seed,
            )
            for pair in pairs:
                rows.append(
                    (ctx.run_id, ctx.geometry_name, eps, pair.index, pair.value,
                     pair.residual, pair.degenerate)
                )
            result.rows.append(
                (f"eps = {eps:g}", ", ".join(f"{p.value:.6f}" for p in pairs))
            )

            result.files.append(
                dump_grid(problem.metric.f, out / indexed_name("metric", "txt", k, total))
            )
            if cfg.export_matrices:
                forms = problem.forms_eps
                result.files.append(
                    export_triplets(forms.stiffness, out / indexed_name("stiffness", "txt", k, total))
                )
                result.files.append(
                    export_triplets(forms.mass, out / indexed_name("mass", "txt", k, total))
                )

        result.files.insert(0, write_csv(out / "spectrum.csv", HEADER, rows))
        return result

    def validate_policies(self, ctx: RunContext) -> list[str]:
        return width_policies(ctx)
