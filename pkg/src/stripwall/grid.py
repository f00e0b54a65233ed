"""Truncated-strip discretization and the basic field containers.

The computational domain is the strip (-M, M) x (0, 1), sampled on a uniform
node-centered grid that includes all boundary nodes.  Field values are stored
in a (ny, nx) array: row j is the horizontal line y = j*hy, so the array
layout matches the on-disk CSV convention (row-major by y, then x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "StripGrid",
    "ScalarField",
    "WallParams",
    "Trace",
    "build_grid",
    "extract_trace",
    "x_average",
    "x_averages",
    "wall_center",
    "recenter",
]


@dataclass(frozen=True)
class StripGrid:
    """Uniform grid on the truncated strip (-half_length, half_length) x (0, 1)."""

    half_length: float
    nx: int
    ny: int

    def __post_init__(self):
        if not self.half_length > 0:
            raise ValueError(f"half_length must be positive, got {self.half_length}")
        if self.nx < 3 or self.ny < 3:
            raise ValueError(f"need at least 3 nodes per direction, got nx={self.nx}, ny={self.ny}")

    @property
    def hx(self) -> float:
        return 2.0 * self.half_length / (self.nx - 1)

    @property
    def hy(self) -> float:
        return 1.0 / (self.ny - 1)

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(-self.half_length, self.half_length, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.ny)

    def trapezoid_x(self) -> np.ndarray:
        """Trapezoid quadrature weights along x (unit spacing; multiply by hx)."""
        w = np.ones(self.nx)
        w[0] = w[-1] = 0.5
        return w

    def trapezoid_y(self) -> np.ndarray:
        w = np.ones(self.ny)
        w[0] = w[-1] = 0.5
        return w


@dataclass
class ScalarField:
    """Phase angle samples (radians) on a StripGrid, shape (ny, nx)."""

    grid: StripGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        expected = (self.grid.ny, self.grid.nx)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} does not match grid {expected}")
        if not np.isfinite(self.values).all():
            raise ValueError("field contains non-finite entries")

    def copy(self) -> "ScalarField":
        return ScalarField(self.grid, self.values.copy())


@dataclass(frozen=True)
class WallParams:
    """Physical parameters: boundary anisotropy strength, applied field, winding."""

    gamma: float
    h: float = 0.0
    k: int = 1

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.h < 0:
            raise ValueError(f"h must be non-negative, got {self.h}")
        if not float(self.k).is_integer() or self.k == 0:
            raise ValueError(f"winding class k must be a nonzero integer, got {self.k}")


@dataclass
class Trace:
    """Boundary phase samples on a uniform 1D line of x positions."""

    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.xs.ndim != 1 or self.xs.shape != self.values.shape:
            raise ValueError("xs and values must be 1D arrays of equal length")
        if self.xs.size < 2:
            raise ValueError("trace needs at least two samples")
        steps = np.diff(self.xs)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12 * abs(steps[0])):
            raise ValueError("trace sample points must be uniformly spaced")
        if not np.isfinite(self.values).all():
            raise ValueError("trace contains non-finite entries")

    @property
    def spacing(self) -> float:
        return (self.xs[-1] - self.xs[0]) / (self.xs.size - 1)


def build_grid(M: float, nx: int, ny: int) -> StripGrid:
    return StripGrid(half_length=float(M), nx=int(nx), ny=int(ny))


def extract_trace(field: ScalarField, side: str = "bottom") -> Trace:
    """Copy the y=0 (bottom) or y=1 (top) row of a field as a Trace."""
    if side == "bottom":
        row = field.values[0]
    elif side == "top":
        row = field.values[-1]
    else:
        raise ValueError(f"side must be 'bottom' or 'top', got {side!r}")
    return Trace(field.grid.xs, row.copy())


def x_average(field: ScalarField, i: int) -> float:
    """Trapezoid average of column i over y in [0, 1]."""
    ny = field.grid.ny
    if not 0 <= i < field.grid.nx:
        raise IndexError(f"column index {i} out of range [0, {field.grid.nx})")
    col = field.values[:, i]
    w = field.grid.trapezoid_y()
    return float(np.sum(w * col) * field.grid.hy)


def x_averages(field: ScalarField) -> np.ndarray:
    """Trapezoid y-averages of every column at once."""
    w = field.grid.trapezoid_y()
    return (w @ field.values) * field.grid.hy


def wall_center(field: ScalarField, params: WallParams) -> float:
    """x position where the y-averaged phase first crosses k*pi/2, scanning
    from the left end.  Sub-grid location by linear interpolation."""
    target = params.k * math.pi / 2.0
    avg = x_averages(field)
    s = avg - target
    xs = field.grid.xs
    hit = np.flatnonzero(s == 0.0)
    cross = np.flatnonzero(s[:-1] * s[1:] < 0.0)
    if hit.size and (not cross.size or hit[0] <= cross[0]):
        return float(xs[hit[0]])
    if not cross.size:
        raise ValueError("not a wall-like configuration: y-average never crosses k*pi/2")
    i = cross[0]
    frac = s[i] / (s[i] - s[i + 1])
    return float(xs[i] + frac * field.grid.hx)


def recenter(field: ScalarField, params: WallParams) -> ScalarField:
    """Translate the field in x so the y-average at x=0 equals k*pi/2.

    The shift is applied row by row with linear interpolation; values beyond
    the truncation window are extended by the end values, which is exact for
    constant tails.  Because averaging in y and linear interpolation in x
    commute, the normalization holds to roundoff after the shift.
    """
    shift = wall_center(field, params)
    if shift == 0.0:
        return field.copy()
    xs = field.grid.xs
    sample_at = xs + shift
    out = np.empty_like(field.values)
    for j in range(field.grid.ny):
        out[j] = np.interp(sample_at, xs, field.values[j])
    return ScalarField(field.grid, out)
