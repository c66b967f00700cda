"""Base task and run context shared by the CLI subcommands."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from ..analysis.extrema import default_delta
from ..geometry.bounds import epsilon_tilde
from ..geometry.strip import StripGeometry, build_geometry
from ..models.config import RunConfig
from ..output import run_id


@dataclass
class RunContext:
    """Context passed to tasks: the validated config plus derived helpers."""

    config: RunConfig

    @cached_property
    def run_id(self) -> str:
        return run_id(self.config)

    @property
    def epsilons(self) -> tuple[float, ...]:
        return self.config.epsilons

    @property
    def max_mode(self) -> int:
        return self.config.max_mode

    @property
    def length(self) -> float:
        return self.config.geometry.length

    @property
    def geometry_name(self) -> str:
        return self.config.geometry.name

    @property
    def output_dir(self) -> Path:
        return self.config.output_dir

    def geometry(self, epsilon: float) -> StripGeometry:
        return build_geometry(self.config.geometry, epsilon)

    def delta(self, n: int) -> float:
        """Configured delta, or the default band half-width for mode ``n``."""
        if self.config.delta is not None:
            return self.config.delta
        return default_delta(n, self.length, self.max_mode)

    def prepare_output(self) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir


@dataclass
class TaskResult:
    """Files written, summary rows for the console and the overall verdict."""

    files: list[Path] = field(default_factory=list)
    rows: list[tuple[str, str]] = field(default_factory=list)
    passed: bool = True


def width_policies(ctx: RunContext) -> list[str]:
    """Every width must lie below the validity radius of the geometry."""
    errors: list[str] = []
    for eps in ctx.epsilons:
        radius = epsilon_tilde(ctx.geometry(eps))
        if eps >= radius:
            errors.append(
                f"epsilon {eps} is not below eps_tilde = {radius:.6g} for {ctx.geometry_name}"
            )
    return errors


class BaseTask(ABC):
    """Base class for CLI subcommands."""

    name: str

    @abstractmethod
    def run(self, ctx: RunContext) -> TaskResult:
        """Compute, write report files under ``ctx.output_dir`` and summarize."""
        pass

    @abstractmethod
    def validate_policies(self, ctx: RunContext) -> list[str]:
        """Checks that need computation but no solve.

        Returns empty list if all policies pass.
        """
        pass
