"""Closed-form kernels and wall profiles.

Everything here is an exact formula: the boundary interaction kernel of the
Dirichlet-to-Neumann map on the unit strip, its Fourier symbol, the
regularized pair used when a short-distance cutoff is needed, the Poisson
kernel of the strip, and the handful of explicit wall shapes that serve as
initializers and regression baselines elsewhere.

All evaluators accept scalars or arrays and are written against decaying
exponentials only, so they neither overflow nor lose digits far from the
origin.
"""

from __future__ import annotations

import numpy as np

from .grid import Trace

__all__ = [
    "dtn_kernel",
    "dtn_kernel_regularized",
    "dtn_symbol",
    "dtn_symbol_regularized",
    "poisson_kernel",
    "wire_wall_components",
    "weak_anchoring_wall",
    "ode_wall",
    "vortex_trace",
    "harmonic_step",
    "profile",
    "ode_wall_residual",
]


def _maybe_scalar(out, scalar_in: bool):
    return float(out) if scalar_in else out


def dtn_kernel(x):
    """Interaction kernel pi*cosh(pi*x)/sinh(pi*x)^2 of the strip's
    Dirichlet-to-Neumann map.  Even, positive, ~1/(pi*x^2) at short range and
    exponentially small at long range.  The origin is a non-integrable
    singularity and is rejected."""
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise ValueError("kernel is singular at x = 0")
    a = np.pi * np.abs(x)
    em = np.expm1(-2.0 * a)
    out = 2.0 * np.pi * np.exp(-a) * (2.0 + em) / (em * em)
    return _maybe_scalar(out, scalar)


def dtn_kernel_regularized(x, eps):
    """Short-range-regularized kernel: finite (and negative) at the origin,
    converging pointwise to dtn_kernel away from it as eps -> 0."""
    if not 0.0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    a = np.pi * np.abs(x)
    u = np.exp(-2.0 * a)
    c2 = np.cos(2.0 * np.pi * eps)
    # cosh/sinh expressions rescaled by exp(-4a) so only decaying
    # exponentials appear
    num = np.exp(-a) * (1.0 + u) * ((c2 - 2.0) * u + 0.5 * (1.0 + u * u))
    den = c2 * u - 0.5 * (1.0 + u * u)
    out = 2.0 * np.pi * np.cos(np.pi * eps) * num / (2.0 * den * den)
    return _maybe_scalar(out, scalar)


def dtn_symbol(k):
    """Fourier symbol -k*tanh(k/2) of the boundary interaction."""
    scalar = np.isscalar(k)
    k = np.asarray(k, dtype=float)
    out = -k * np.tanh(0.5 * k)
    return _maybe_scalar(out, scalar)


def dtn_symbol_regularized(k, eps):
    """Symbol of the regularized kernel, -k*sinh(k*(1/2-eps))/cosh(k/2).

    Sandwiched between the plain symbol and zero, and equal to it in the
    eps -> 0 limit.  Evaluated via decaying exponentials:
    -|k| e^{-|k| eps} (1 - e^{-|k|(1-2 eps)}) / (1 + e^{-|k|}).
    """
    if not 0.0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    scalar = np.isscalar(k)
    k = np.asarray(k, dtype=float)
    a = np.abs(k)
    out = -a * np.exp(-a * eps) * (-np.expm1(-a * (1.0 - 2.0 * eps))) / (1.0 + np.exp(-a))
    return _maybe_scalar(out, scalar)


def poisson_kernel(x, y):
    """Poisson kernel of the strip, 2*cosh(pi*x)*sin(pi*y) /
    (cosh(2*pi*x) - cos(2*pi*y)), for 0 <= y <= 1.

    Unit x-integral for each interior y.  The corner points (0,0) and (0,1)
    are poles and are rejected.
    """
    scalar = np.isscalar(x) and np.isscalar(y)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any((y < 0.0) | (y > 1.0)):
        raise ValueError("y must lie in [0, 1]")
    if np.any((x == 0.0) & ((y == 0.0) | (y == 1.0))):
        raise ValueError("pole of the Poisson kernel at (0,0)/(0,1)")
    a = np.pi * np.abs(x)
    e = np.exp(-a)
    u = e * e
    num = e * (1.0 + u) * np.sin(np.pi * y)
    den = 0.5 * (1.0 + u * u) - u * np.cos(2.0 * np.pi * y)
    return _maybe_scalar(num / den, scalar)


def _two_arctan_exp(t):
    """2*arctan(exp(-t)), evaluated without overflow for any t."""
    e = np.exp(-np.abs(t))
    base = 2.0 * np.arctan(e)
    return np.where(t >= 0.0, base, np.pi - base)


def wire_wall_components(x):
    """In-plane magnetization components (tanh(x/sqrt2), sech(x/sqrt2)) of
    the classic transverse wall in a thin wire; the zero-anchoring analogue
    of the strip walls."""
    scalar = np.isscalar(x)
    u = np.asarray(x, dtype=float) / np.sqrt(2.0)
    e = np.exp(-np.abs(u))
    sech = 2.0 * e / (1.0 + e * e)
    m1 = np.tanh(u)
    if scalar:
        return float(m1), float(sech)
    return m1, sech


def weak_anchoring_wall(x):
    """Universal wall shape in the weak-anchoring limit (anchoring strength
    scaled out): pi at -inf, 0 at +inf, pi/2 at the center."""
    scalar = np.isscalar(x)
    out = _two_arctan_exp(2.0 * np.asarray(x, dtype=float))
    return _maybe_scalar(out, scalar)


def ode_wall(x, gamma):
    """Exact wall 2*arctan(exp(-2*sqrt(gamma)*x)) of the local boundary
    equation theta'' = 2*gamma*sin(2*theta).  Decreases from pi to 0; its
    strip energy is exactly 4*sqrt(gamma)."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    scalar = np.isscalar(x)
    out = _two_arctan_exp(2.0 * np.sqrt(gamma) * np.asarray(x, dtype=float))
    return _maybe_scalar(out, scalar)


def vortex_trace(x, gamma):
    """Boundary trace pi/2 - arctan(2*gamma*x) of the edge vortex; solves the
    trace equation exactly when the kernel is replaced by its short-range
    model 1/(pi*x^2)."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    scalar = np.isscalar(x)
    out = 0.5 * np.pi - np.arctan(2.0 * gamma * np.asarray(x, dtype=float))
    return _maybe_scalar(out, scalar)


def harmonic_step(x, y):
    """Harmonic extension pi/2 - arctan(sinh(pi*x)/sin(pi*y)) of the sharp
    step (pi for x<0, 0 for x>0) into the strip; the strong-anchoring limit
    shape."""
    scalar = np.isscalar(x) and np.isscalar(y)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    # clip the sinh argument: beyond ~700 the ratio is astronomically large
    # and arctan2 saturates at the same +-pi/2 anyway
    s = np.sinh(np.clip(np.pi * x, -700.0, 700.0))
    out = 0.5 * np.pi - np.arctan2(s, np.sin(np.pi * y))
    return _maybe_scalar(out, scalar)


_PROFILES_1D = {
    "transverse_1d": lambda x, gamma: wire_wall_components(x),
    "small_gamma": lambda x, gamma: weak_anchoring_wall(x),
    "ode_wall": lambda x, gamma: ode_wall(x, _require_gamma(gamma, "ode_wall")),
    "boundary_vortex": lambda x, gamma: vortex_trace(x, _require_gamma(gamma, "boundary_vortex")),
}


def _require_gamma(gamma, name):
    if gamma is None:
        raise ValueError(f"profile {name!r} needs gamma")
    return gamma


def profile(name, point, gamma=None):
    """Evaluate a named baseline profile.

    1D profiles take a scalar/array x; "large_gamma_2d" takes a pair (x, y).
    "transverse_1d" returns the component pair, the rest return the angle.
    """
    if name == "large_gamma_2d":
        x, y = point
        return harmonic_step(x, y)
    try:
        fn = _PROFILES_1D[name]
    except KeyError:
        known = sorted(_PROFILES_1D) + ["large_gamma_2d"]
        raise ValueError(f"unknown profile {name!r}; known: {known}") from None
    return fn(point, gamma)


def ode_wall_residual(trace: Trace, gamma: float) -> Trace:
    """Residual theta'' - 2*gamma*sin(2*theta) of the local boundary
    equation on the interior nodes of a uniform trace."""
    v = trace.values
    h2 = trace.spacing**2
    core = (v[:-2] - 2.0 * v[1:-1] + v[2:]) / h2 - 2.0 * gamma * np.sin(2.0 * v[1:-1])
    return Trace(trace.xs[1:-1], core)
