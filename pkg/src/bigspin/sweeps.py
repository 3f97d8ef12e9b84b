"""Parameter-sweep grids, worker-pool execution and deterministic CSV output.

Cells are pure functions of their coordinates, so a sweep may be spread over a
process pool; results are gathered by cell index, which keeps the emitted CSV
byte-identical for any worker count.  Failed cells carry their error message
instead of aborting the sweep.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field

import numpy as np

__all__ = ["SweepGrid", "run_grid", "format_float", "write_csv"]


@dataclass
class SweepGrid:
    """Rectangular sweep result: one scalar per (row, col) cell."""

    row_name: str
    col_name: str
    value_name: str
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray  # (len(rows), len(cols)); NaN where a cell failed
    status: list[str] = field(default_factory=list)  # row-major; "" means ok
    meta: dict = field(default_factory=dict)

    @property
    def failed_cells(self) -> list[tuple[int, str]]:
        return [(i, msg) for i, msg in enumerate(self.status) if msg]

    def iter_cells(self):
        """(row_value, col_value, value) in row-major (lexicographic) order."""
        for i, r in enumerate(self.rows):
            for j, c in enumerate(self.cols):
                yield r, c, self.values[i, j]


def _eval_cell(args):
    fn, r, c = args
    try:
        return float(fn(r, c)), ""
    except Exception as exc:  # cell failures must not kill the sweep
        return float("nan"), f"({r!r}, {c!r}): {exc}"


def run_grid(cell_fn, rows, cols, workers: int = 1, *, row_name="row", col_name="col",
             value_name="value", meta: dict | None = None) -> SweepGrid:
    """Evaluate cell_fn(row, col) over the grid, optionally on a process pool.

    cell_fn must be picklable (module-level function or functools.partial of
    one) when workers > 1.
    """
    rows = np.asarray(rows)
    cols = np.asarray(cols)
    tasks = [(cell_fn, r, c) for r in rows.tolist() for c in cols.tolist()]
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_eval_cell, tasks)
    else:
        results = [_eval_cell(t) for t in tasks]
    values = np.array([v for v, _ in results]).reshape(len(rows), len(cols))
    status = [msg for _, msg in results]
    return SweepGrid(row_name, col_name, value_name, rows, cols, values,
                     status, dict(meta or {}))


def format_float(x) -> str:
    """Fixed 17-significant-digit formatting so output bytes are reproducible."""
    return format(float(x), ".17g")


def write_csv(path, columns: list[str], rows, meta: dict | None = None) -> None:
    """Write rows of floats with '#' metadata lines and a single header row."""
    lines = []
    for key in sorted(meta or {}):
        lines.append(f"# {key}: {(meta or {})[key]}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_float(x) for x in row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
