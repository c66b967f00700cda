"""Report files: JSON via pydantic, CSV tables and plain-text grid dumps."""

import csv
import hashlib
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
from pydantic import BaseModel

from .models.config import RunConfig


def run_id(config: RunConfig) -> str:
    """Short content hash of the configuration, independent of the output directory."""
    canonical = config.model_dump_json(exclude={"output_dir"})
    return hashlib.sha1(canonical.encode()).hexdigest()[:12]


def indexed_name(stem: str, suffix: str, index: int, total: int) -> str:
    """``stem.suffix`` for a single width, ``stem_e{index}.suffix`` otherwise."""
    if total == 1:
        return f"{stem}.{suffix}"
    return f"{stem}_e{index}.{suffix}"


def _cell(value: object) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_json(report: BaseModel, path: Path) -> Path:
    path.write_text(report.model_dump_json(indent=2) + "\n")
    return path


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path


def dump_grid(values: np.ndarray, path: Path) -> Path:
    """Row = t-index, column = s-index, 17 significant digits."""
    np.savetxt(path, np.asarray(values, dtype=float), fmt="%.17g")
    return path
