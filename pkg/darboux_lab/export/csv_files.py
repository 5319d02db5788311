"""CSV tables with provenance headers, written atomically."""

from __future__ import annotations

import csv
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from darboux_lab.utils.errors import InvalidSamples
from darboux_lab.utils.logger import get_logger

logger = get_logger(__name__)


def format_number(value: Any) -> str:
    """Shortest round-trip text of a real number."""
    return repr(float(value))


@dataclass(frozen=True)
class CsvTable:
    """Header row, a 2D block of real values and ``# key=value`` metadata lines."""

    columns: list[str]
    rows: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != len(self.columns):
            raise InvalidSamples(
                f"rows of shape {rows.shape} do not match {len(self.columns)} columns"
            )
        if not np.all(np.isfinite(rows)):
            raise InvalidSamples("CSV tables hold finite values only")
        object.__setattr__(self, "rows", rows)

    def write_to(self, handle) -> None:
        for key, value in self.metadata.items():
            handle.write(f"# {key}={value}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_number(v) for v in row])


def write_tables(tables: dict[Path, CsvTable]) -> list[Path]:
    """Write every table or none.

    All tables go to temporary files in their target directories first; only
    when every write succeeded are they renamed into place.

    Args:
        tables: Target path for each table.

    Returns:
        Written paths in the order given.
    """
    staged: list[tuple[str, Path]] = []
    try:
        for path, table in tables.items():
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
            staged.append((temp_name, path))
            with os.fdopen(fd, "w", newline="", encoding="utf-8") as handle:
                table.write_to(handle)
    except BaseException:
        for temp_name, _ in staged:
            Path(temp_name).unlink(missing_ok=True)
        raise

    for temp_name, path in staged:
        os.replace(temp_name, path)
        logger.info(f"Wrote {path}")
    return [path for _, path in staged]


def write_json(path: Path, data: Any) -> Path:
    """Write a JSON document through a temporary file and an atomic rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(data, handle, indent=2)
            handle.write("\n")
    except BaseException:
        Path(temp_name).unlink(missing_ok=True)
        raise
    os.replace(temp_name, path)
    logger.info(f"Wrote {path}")
    return path
