"""Domain walls in a thin ferromagnetic strip: energies, minimizers, and the
boundary-trace reduction."""

from .grid import (
    StripGrid,
    ScalarField,
    WallParams,
    Trace,
    build_grid,
    extract_trace,
    x_average,
    x_averages,
    wall_center,
    recenter,
)
from .energy import (
    EnergyBreakdown,
    strip_energy,
    strip_energy_gradient,
    euler_lagrange_residual,
)

__version__ = "0.1.0"
