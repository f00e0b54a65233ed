"""CSV and JSON serialization for fields, traces, and experiment tables.

All floats are written with 17 significant digits so a write/read cycle
reproduces the binary values exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .grid import ScalarField, StripGrid, Trace, build_grid

__all__ = [
    "write_field",
    "read_field",
    "write_trace",
    "read_trace",
    "write_trend",
    "read_trend",
]

_FMT = "%.17g"

TREND_COLUMNS = ("eps", "energy_eps", "energy_gap", "h1_distance")


def _sidecar(path) -> Path:
    return Path(path).with_suffix(".json")


def write_field(field: ScalarField, path) -> None:
    """Write a field as CSV (header x,y,theta; row-major by y then x) plus a
    JSON sidecar with the grid metadata."""
    g = field.grid
    xx, yy = np.meshgrid(g.xs, g.ys)
    table = np.column_stack([xx.ravel(), yy.ravel(), field.values.ravel()])
    np.savetxt(path, table, fmt=_FMT, delimiter=",", header="x,y,theta", comments="")
    meta = {"M": g.half_length, "nx": g.nx, "ny": g.ny}
    _sidecar(path).write_text(json.dumps(meta) + "\n")


def read_field(path) -> ScalarField:
    meta = json.loads(_sidecar(path).read_text())
    grid = build_grid(meta["M"], meta["nx"], meta["ny"])
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if table.shape != (grid.ny * grid.nx, 3):
        raise ValueError(f"{path}: expected {grid.ny * grid.nx} rows of x,y,theta, got shape {table.shape}")
    return ScalarField(grid, table[:, 2].reshape(grid.ny, grid.nx))


def write_trace(trace: Trace, path) -> None:
    table = np.column_stack([trace.xs, trace.values])
    np.savetxt(path, table, fmt=_FMT, delimiter=",", header="x,theta", comments="")
    meta = {"window": [trace.xs[0], trace.xs[-1]], "spacing": trace.spacing}
    _sidecar(path).write_text(json.dumps(meta) + "\n")


def read_trace(path) -> Trace:
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if table.ndim != 2 or table.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns x,theta")
    return Trace(table[:, 0], table[:, 1])


def write_trend(rows, path) -> None:
    """Write the cutoff-parameter trend table (eps, energy_eps, energy_gap,
    h1_distance), one row per eps."""
    arr = np.atleast_2d(np.asarray(rows, dtype=float))
    if arr.shape[1] != len(TREND_COLUMNS):
        raise ValueError(f"trend rows need {len(TREND_COLUMNS)} columns {TREND_COLUMNS}")
    np.savetxt(path, arr, fmt=_FMT, delimiter=",", header=",".join(TREND_COLUMNS), comments="")


def read_trend(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
