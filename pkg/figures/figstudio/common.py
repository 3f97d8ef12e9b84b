"""Shared CSV parsing and image output for the figure scripts.

The scripts are deliberately thin: every number comes from the CSV produced
by the `revival` CLI, nothing is recomputed here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import numpy as np


@dataclass
class Table:
    """Parsed CSV: '#' metadata lines, named float columns."""

    meta: dict
    columns: dict

    def __getitem__(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise ValueError(
                f"missing column {name!r}; file has {sorted(self.columns)}"
            )
        return self.columns[name]


def read_table(path: str, required: tuple[str, ...] = ()) -> Table:
    if not os.path.exists(path):
        raise FileNotFoundError(f"input CSV not found: {path}")
    meta: dict = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                meta[key.strip()] = val.strip()
            elif header is None:
                header = [c.strip() for c in line.split(",")]
            else:
                rows.append([float(x) for x in line.split(",")])
    if header is None:
        raise ValueError(f"no header row in {path}")
    data = np.array(rows) if rows else np.empty((0, len(header)))
    columns = {name: data[:, i] for i, name in enumerate(header)}
    for name in required:
        if name not in columns:
            raise ValueError(f"{path} is missing required column {name!r}")
    return Table(meta, columns)


def save(fig, out_path: str) -> list[str]:
    """Write the figure; a bare stem produces both PNG and SVG."""
    root, ext = os.path.splitext(out_path)
    targets = [out_path] if ext.lower() in (".png", ".svg") else [root + ".png", root + ".svg"]
    written = []
    for target in targets:
        directory = os.path.dirname(target)
        if directory:
            os.makedirs(directory, exist_ok=True)
        fig.savefig(target, dpi=150, metadata={"Date": None} if target.endswith(".svg") else None)
        written.append(target)
    return written
