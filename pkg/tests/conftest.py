"""Pytest configuration and fixtures."""

import json
import math
from pathlib import Path

import pytest
from typer.testing import CliRunner

from strip_spectra.cli import app
from strip_spectra.geometry import PRESETS
from strip_spectra.operator import GridSpec, sample_psi0
from strip_spectra.pipeline import build_problem


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line(
        "markers", "slow: marks epsilon-sweep tests that solve many eigenproblems"
    )


@pytest.fixture
def fixtures_dir() -> Path:
    """Return the config fixture directory."""
    return Path(__file__).parent / "fixtures"


@pytest.fixture
def make_geometry():
    """Factory fixture building a preset geometry on L = pi by default."""

    def _make(preset: str, epsilon: float, length: float = math.pi, **kwargs):
        return PRESETS[preset](length, epsilon, **kwargs)

    return _make


@pytest.fixture
def make_problem(make_geometry):
    """Factory fixture assembling H_eps and H_0 for a preset."""

    def _make(preset: str, epsilon: float, n_s: int = 241, n_t: int = 9, **kwargs):
        return build_problem(make_geometry(preset, epsilon, **kwargs), n_s, n_t)

    return _make


@pytest.fixture
def sampled_mode():
    """Factory fixture returning psi_n^0 sampled on a grid as a flat vector."""

    def _sample(n: int, length: float = math.pi, n_s: int = 241, n_t: int = 9):
        grid = GridSpec(length, n_s, n_t)
        return grid, grid.to_vector(sample_psi0(n, grid))

    return _sample


@pytest.fixture
def write_config(tmp_path: Path):
    """Factory fixture writing a config dict as JSON and returning its path."""

    def _write(config: dict, name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(config))
        return path

    return _write


@pytest.fixture
def run_cli():
    """Factory fixture invoking a subcommand through the typer test runner."""
    runner = CliRunner()

    def _run(command: str, config_path: Path, out: Path, *extra: str):
        return runner.invoke(
            app, [command, "--config", str(config_path), "--out", str(out), *extra]
        )

    return _run
