"""One task per CLI subcommand."""

from .base import BaseTask, RunContext, TaskResult
from .hotspots import HotspotsTask
from .spectrum import SpectrumTask
from .sweep import SweepTask
from .validate import ValidateTask

__all__ = [
    "BaseTask",
    "RunContext",
    "TaskResult",
    "HotspotsTask",
    "SpectrumTask",
    "SweepTask",
    "ValidateTask",
]
