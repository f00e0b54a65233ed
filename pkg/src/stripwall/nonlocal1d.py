"""The boundary-trace reduction of the strip problem.

A reflection-symmetric critical field is determined by its trace on one
edge, and the strip energy collapses to a 1D functional of that trace: a
quarter double integral of kernel-weighted squared differences plus the
anchoring penalty.  This module evaluates that functional and its
equilibrium residual, rebuilds the 2D field from a trace through the
strip's Poisson kernel, checks the exact factor of two between the two
energies, and relaxes traces by preconditioned descent.

Quadrature scheme, shared by energy and residual: squared differences are
paired symmetrically (which cancels the kernel's inverse-square blowup to a
removable point), the cell straddling zero separation either takes its
finite limiting integrand (energy) or is dropped with an O(h) error
(residual), and the constant tails outside the sampled window enter
analytically, not by truncation.  Double sums are evaluated through FFT
correlations, so cost is O(N log N) rather than O(N^2).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len, rfft, irfft
from scipy.signal import fftconvolve
from scipy.interpolate import CubicSpline

from .analytic import dtn_kernel
from .descent import DescentResult, armijo_minimize
from .energy import EnergyBreakdown, strip_energy
from .grid import ScalarField, StripGrid, Trace, WallParams
from .minimize import SolveOptions
from .parallel import fft_workers

__all__ = [
    "trace_energy",
    "trace_energy_gradient",
    "trace_equation_residual",
    "poisson_extend",
    "factor_two_check",
    "RelaxResult",
    "relax_trace",
]

# the strip kernel is below 1e-17 beyond this separation, so constant-tail
# padding this deep captures every cross term double precision can see
KERNEL_REACH = 16.0

_TAIL_SPAN = 0.05       # max total variation over each outer tenth
_TAIL_OFFSET = 0.05     # max distance of the end values from multiples of pi
_EXTEND_MARGIN = 5.0


def _tail_policy(trace: Trace, context: str) -> None:
    """Constant-tail precondition: the outer tenth on each side must be flat
    (error otherwise) and should sit at multiples of pi (warning otherwise,
    since the energy is still well defined for a merely constant tail)."""
    v = trace.values
    n = max(len(v) // 10, 3)
    for side, chunk in (("left", v[:n]), ("right", v[-n:])):
        if np.max(chunk) - np.min(chunk) > _TAIL_SPAN:
            raise ValueError(f"{context}: {side} tail is not constant (variation "
                             f"{np.max(chunk) - np.min(chunk):.3g} over the outer tenth)")
    for side, end in (("left", v[0]), ("right", v[-1])):
        off = abs(end - np.pi * np.round(end / np.pi))
        if off > _TAIL_OFFSET:
            warnings.warn(
                f"{context}: {side} tail sits {off:.3g} away from a multiple of pi; "
                "tail contributions outside the window are dropped",
                stacklevel=3,
            )


def _pad_constant(v: np.ndarray, pad: int) -> np.ndarray:
    return np.concatenate([np.full(pad, v[0]), v, np.full(pad, v[-1])])


def _interaction_energy(v: np.ndarray, h: float) -> float:
    """Quarter double integral of K(x-x')(v(x)-v(x'))^2, constant tails.

    Reduced to (1/2) * int_0^inf K(s) g(s) ds with
    g(s) = int (v(x)-v(x-s))^2 dx, evaluated by trapezoid over s = j*h.  The
    s=0 integrand has the finite limit (int v'^2)/pi, which keeps the rule
    second order.  g comes from one FFT autocorrelation of the padded trace.
    """
    J = int(np.ceil(KERNEL_REACH / h))
    vp = _pad_constant(v, J)
    np_len = len(vp)
    L = next_fast_len(np_len + J + 1)
    spec = rfft(vp, n=L, workers=fft_workers())
    corr = irfft(spec * np.conj(spec), n=L, workers=fft_workers())[: J + 1]
    sq = vp * vp
    total = np.sum(sq)
    pref = np.concatenate([[0.0], np.cumsum(sq)])
    js = np.arange(J + 1)
    pair_sq = (total - pref[js]) + pref[np_len - js]
    g = np.maximum(h * (pair_sq - 2.0 * corr), 0.0)

    f = np.empty(J + 1)
    f[1:] = dtn_kernel(js[1:] * h) * g[1:]
    f[0] = g[1] / (np.pi * h * h)  # limiting integrand (int v'^2)/pi
    weights = np.ones(J + 1)
    weights[0] = 0.5
    weights[-1] = 0.5
    return float(0.5 * h * np.sum(weights * f))


def _penalty_energy(v: np.ndarray, h: float, gamma: float) -> float:
    w = np.ones(len(v))
    w[0] = 0.5
    w[-1] = 0.5
    s = np.sin(v)
    return float(gamma * h * np.sum(w * s * s))


def trace_energy(trace: Trace, gamma: float) -> EnergyBreakdown:
    """Energy of a boundary trace: kernel interaction in the nonlocal slot,
    anchoring penalty (over the window) in the boundary slot."""
    _tail_policy(trace, "trace_energy")
    return EnergyBreakdown(
        dirichlet=0.0,
        zeeman=0.0,
        boundary=_penalty_energy(trace.values, trace.spacing, gamma),
        stray=_interaction_energy(trace.values, trace.spacing),
    )


def _interaction_gradient(v: np.ndarray, h: float) -> np.ndarray:
    """Exact derivative of _interaction_energy with respect to the window
    values; the constant pads are held fixed."""
    n = len(v)
    J = int(np.ceil(KERNEL_REACH / h))
    vp = _pad_constant(v, J)
    js = np.arange(1, J + 1)
    coef = h * h * dtn_kernel(js * h)
    coef[-1] *= 0.5  # trapezoid end weight in the s-quadrature
    kern = np.concatenate([coef[::-1], [0.0], coef])
    neighbor_sum = fftconvolve(vp, kern, mode="same")[J : J + n]
    grad = 2.0 * np.sum(coef) * v - neighbor_sum
    # s=0 limiting term differentiates to a scaled second difference
    grad += (2.0 * vp[J : J + n] - vp[J - 1 : J + n - 1] - vp[J + 1 : J + n + 1]) / (2.0 * np.pi)
    return grad


def trace_energy_gradient(trace: Trace, gamma: float) -> np.ndarray:
    """Nodewise derivative of trace_energy; finite-difference consistent to
    machine precision, which is what the relaxation loop needs."""
    v = trace.values
    h = trace.spacing
    w = np.ones(len(v))
    w[0] = 0.5
    w[-1] = 0.5
    return _interaction_gradient(v, h) + gamma * h * w * np.sin(2.0 * v)


def _tail_integral(kernel: str, a) -> float:
    # exact integral of the kernel from a to infinity
    if kernel == "strip":
        return 1.0 / np.sinh(np.pi * a)
    return 1.0 / (np.pi * a)


def trace_equation_residual(trace: Trace, gamma: float, kernel: str = "strip") -> Trace:
    """Pointwise equilibrium residual of a trace.

    Symmetric-difference quadrature of the kernel term plus gamma*sin(2v);
    the cell at zero separation is dropped (O(h) error, by design), and
    separations beyond every sampled pair use the kernel's exact tail
    integral against the constant tail values.  kernel selects the true
    strip kernel or its short-range model 1/(pi*x^2).
    """
    if kernel not in ("strip", "inverse_square"):
        raise ValueError(f"unknown kernel {kernel!r}")
    _tail_policy(trace, "trace_equation_residual")
    v = trace.values
    h = trace.spacing
    n = len(v)
    J = n  # j*h then exceeds the window span, so both partners sit in the tails
    js = np.arange(1, J + 1)
    if kernel == "strip":
        kj = dtn_kernel(js * h)
    else:
        kj = 1.0 / (np.pi * (js * h) ** 2)
    vp = _pad_constant(v, J)
    kern = np.concatenate([kj[::-1], [0.0], kj])
    neighbor_sum = fftconvolve(vp, kern, mode="same")[J : J + n]
    res = h * (2.0 * np.sum(kj) * v - neighbor_sum)
    res += (2.0 * v - v[0] - v[-1]) * _tail_integral(kernel, (J + 0.5) * h)
    res += gamma * np.sin(2.0 * v)
    return Trace(trace.xs, res)


def poisson_extend(trace: Trace, grid: StripGrid) -> ScalarField:
    """Rebuild the reflection-symmetric harmonic field with a given bottom
    trace.

    Works on the correction to the trace: its Fourier multiplier vanishes
    at k=0, so the non-decaying trace never needs transforming, its constant
    tails extend exactly, and the bottom row reproduces the trace to
    rounding.  The trace window must cover the grid with margin (kernel
    tails wrap around the transform window otherwise).
    """
    if trace.xs[0] > grid.xs[0] - _EXTEND_MARGIN + 1e-9 or trace.xs[-1] < grid.xs[-1] + _EXTEND_MARGIN - 1e-9:
        raise ValueError(
            f"insufficient margin: trace window [{trace.xs[0]:g}, {trace.xs[-1]:g}] must cover "
            f"the grid with margin {_EXTEND_MARGIN:g} on each side"
        )
    v = trace.values
    h = trace.spacing
    n = len(v)
    slope = np.gradient(v, h)
    spec = rfft(slope, n=n, workers=fft_workers())
    k = 2.0 * np.pi * np.fft.rfftfreq(n, d=h)

    ytil = np.minimum(grid.ys, 1.0 - grid.ys)
    a = k[None, :]
    yy = ytil[:, None]
    # cosh(k(1/2-y))/cosh(k/2) via decaying exponentials
    mhat = np.exp(-a * yy) * (1.0 + np.exp(-a * (1.0 - 2.0 * yy))) / (1.0 + np.exp(-a))
    mult = np.zeros_like(mhat, dtype=complex)
    mult[:, 1:] = (mhat[:, 1:] - 1.0) / (1j * k[1:])[None, :]
    rows = v[None, :] + irfft(spec[None, :] * mult, n=n, workers=fft_workers())
    spline = CubicSpline(trace.xs, rows, axis=1)
    return ScalarField(grid, spline(grid.xs))


def factor_two_check(trace: Trace, gamma: float, grid: StripGrid) -> dict:
    """Evaluate the strip energy of the rebuilt field against twice the
    trace energy; the two agree in the continuum."""
    extension = poisson_extend(trace, grid)
    f2d = strip_energy(extension, WallParams(gamma=gamma)).total
    fbar = trace_energy(trace, gamma).total
    scale = max(abs(2.0 * fbar), np.finfo(float).tiny)
    return {"F_2d": f2d, "Fbar": fbar, "rel_err": abs(f2d - 2.0 * fbar) / scale}


@dataclass
class RelaxResult:
    trace: Trace
    energy: EnergyBreakdown
    report: dict


def _circulant_preconditioner(v_len: int, h: float, gamma: float, free: np.ndarray):
    """Inverse of the circulant model of the trace Hessian: kernel part by
    its exact symbol on the window, plus the anchoring mass 2*gamma*h."""
    J = min(int(np.ceil(KERNEL_REACH / h)), v_len - 1)
    js = np.arange(1, J + 1)
    coef = h * h * dtn_kernel(js * h)
    col = np.zeros(v_len)
    col[0] = 2.0 * np.sum(coef) + 1.0 / np.pi
    col[1] -= 0.5 / np.pi
    col[-1] -= 0.5 / np.pi
    np.add.at(col, js, -coef)
    np.add.at(col, v_len - js, -coef)
    symbol = rfft(col).real + 2.0 * gamma * h
    workers = fft_workers()

    def precondition(g: np.ndarray) -> np.ndarray:
        d = irfft(rfft(g, workers=workers) / symbol, n=v_len, workers=workers)
        return np.where(free, d, 0.0)

    return precondition


def relax_trace(init: Trace, gamma: float, opts: SolveOptions | None = None) -> RelaxResult:
    """Descend the trace energy from an admissible initial trace.

    Ends stay fixed at their initial values, and the node nearest x=0 is
    pinned to pi/2 to remove the translation degeneracy.  Tolerances and
    iteration budget come from SolveOptions; its init and recentering
    fields do not apply here.
    """
    opts = opts if opts is not None else SolveOptions()
    v0 = init.values.copy()
    if abs(v0[0] - np.pi) > _TAIL_OFFSET or abs(v0[-1]) > _TAIL_OFFSET:
        raise ValueError(
            f"init tails must sit at pi (left) and 0 (right); got {v0[0]:.4g}, {v0[-1]:.4g}"
        )
    _tail_policy(init, "relax_trace")
    h = init.spacing
    n = len(v0)
    pin = int(np.argmin(np.abs(init.xs)))
    if pin in (0, n - 1):
        raise ValueError("trace window must contain x=0 in its interior")
    v0[pin] = np.pi / 2.0
    free = np.ones(n, dtype=bool)
    free[[0, -1, pin]] = False

    def energy_fn(v: np.ndarray) -> float:
        return _interaction_energy(v, h) + _penalty_energy(v, h, gamma)

    def gradient_fn(v: np.ndarray) -> np.ndarray:
        w = np.ones(n)
        w[0] = 0.5
        w[-1] = 0.5
        return _interaction_gradient(v, h) + gamma * h * w * np.sin(2.0 * v)

    def project(v: np.ndarray) -> np.ndarray:
        out = np.clip(v, 0.0, np.pi)
        out[0] = v0[0]
        out[-1] = v0[-1]
        out[pin] = np.pi / 2.0
        return out

    res: DescentResult = armijo_minimize(
        v0,
        energy_fn,
        gradient_fn,
        grad_tol=opts.grad_tol,
        energy_tol=opts.energy_tol,
        max_iters=opts.max_iters,
        free_mask=free,
        project=project,
        precondition=_circulant_preconditioner(n, h, gamma, free) if opts.precondition else None,
    )
    final = Trace(init.xs, res.x)
    return RelaxResult(
        trace=final,
        energy=EnergyBreakdown(
            dirichlet=0.0,
            zeeman=0.0,
            boundary=_penalty_energy(res.x, h, gamma),
            stray=_interaction_energy(res.x, h),
        ),
        report={
            "converged": res.converged,
            "iterations": res.iterations,
            "grad_inf": res.grad_inf,
            "stop_reason": res.stop_reason,
        },
    )
