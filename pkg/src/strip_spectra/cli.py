"""CLI entry point for strip-spectra."""

from pathlib import Path
from typing import Annotated, Any, Optional

import typer
import yaml
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from .errors import ConfigError, StripSpectraError
from .log import configure_logging
from .models.config import RunConfig
from .tasks import BaseTask, HotspotsTask, RunContext, SpectrumTask, SweepTask, ValidateTask

app = typer.Typer(
    name="strip-spectra",
    help="Neumann spectra of thin strips on surfaces",
    no_args_is_help=True,
)
console = Console()
error_console = Console(stderr=True)

ConfigOption = Annotated[
    Path, typer.Option("--config", "-c", help="Path to a JSON or YAML run configuration")
]
OutOption = Annotated[
    Optional[Path], typer.Option("--out", "-o", help="Output directory (overrides output_dir)")
]
SeedOption = Annotated[Optional[int], typer.Option("--seed", help="Random seed (overrides seed)")]
VerboseOption = Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging")]


def load_config(
    config_path: Path, out: Path | None = None, seed: int | None = None
) -> RunConfig:
    """Load, override and validate a run configuration file."""
    if not config_path.exists():
        raise ConfigError(f"Config file not found: {config_path}")

    try:
        with open(config_path) as f:
            raw: Any = yaml.safe_load(f)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark is not None else str(config_path)
        raise ConfigError("Config parse error", [f"{where}: {e}"]) from e

    if not isinstance(raw, dict):
        raise ConfigError("Config parse error", ["top level must be a mapping"])
    if out is not None:
        raw["output_dir"] = str(out)
    if seed is not None:
        raw["seed"] = seed

    try:
        return RunConfig.model_validate(raw)
    except ValidationError as e:
        diagnostics = [
            f"{' -> '.join(str(x) for x in error['loc']) or 'config'}: {error['msg']}"
            for error in e.errors()
        ]
        raise ConfigError("Validation errors", diagnostics) from e


def execute(
    task: BaseTask, config_path: Path, out: Path | None, seed: int | None, verbose: bool
) -> None:
    """Load the config, check policies, run ``task`` and map outcomes to exit codes."""
    configure_logging(verbose)
    try:
        config = load_config(config_path, out, seed)
    except ConfigError as e:
        error_console.print(f"[bold red]{escape(str(e))}:[/bold red]")
        for line in e.diagnostics:
            error_console.print(f"  [red]•[/red] {escape(line)}")
        raise typer.Exit(1)

    ctx = RunContext(config=config)
    try:
        errors = task.validate_policies(ctx)
    except StripSpectraError as e:
        error_console.print(f"[bold red]Error:[/bold red] {escape(f'[{e.module}] {e}')}")
        raise typer.Exit(2)

    if errors:
        error_console.print("[bold yellow]Policy violations:[/bold yellow]")
        for error in errors:
            error_console.print(f"  [yellow]•[/yellow] {escape(error)}")
        raise typer.Exit(1)

    try:
        result = task.run(ctx)
    except StripSpectraError as e:
        error_console.print(f"[bold red]Error:[/bold red] {escape(f'[{e.module}] {e}')}")
        raise typer.Exit(2)

    if result.passed:
        console.print(Panel.fit(f"[bold green]✓ {task.name} passed[/bold green] ({ctx.run_id})"))
    else:
        console.print(Panel.fit(f"[bold red]✗ {task.name} failed[/bold red] ({ctx.run_id})"))

    table = Table(title=f"{ctx.geometry_name}: {task.name}")
    table.add_column("Item", style="cyan")
    table.add_column("Result", style="green")
    for item, value in result.rows:
        table.add_row(item, escape(value))
    console.print(table)

    files = Table(title="Generated Files")
    files.add_column("File", style="cyan")
    for path in result.files:
        files.add_row(str(path))
    console.print(files)

    if not result.passed:
        raise typer.Exit(1)


@app.command()
def validate(
    config: ConfigOption,
    out: OutOption = None,
    seed: SeedOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Report C_eps, eps_tilde and the Jacobian bounds of the geometry."""
    execute(ValidateTask(), config, out, seed, verbose)


@app.command()
def spectrum(
    config: ConfigOption,
    out: OutOption = None,
    seed: SeedOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Compute the smallest N eigenvalues of H_eps."""
    execute(SpectrumTask(), config, out, seed, verbose)


@app.command()
def hotspots(
    config: ConfigOption,
    out: OutOption = None,
    seed: SeedOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Check where the extrema of modes 2..N lie."""
    execute(HotspotsTask(), config, out, seed, verbose)


@app.command()
def sweep(
    config: ConfigOption,
    out: OutOption = None,
    seed: SeedOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Fit convergence rates of the configured observables over an epsilon sweep."""
    execute(SweepTask(), config, out, seed, verbose)


if __name__ == "__main__":
    app()
