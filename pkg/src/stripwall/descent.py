"""Projected gradient descent with Armijo backtracking.

Shared by the 2D strip solver and the 1D trace relaxation.  The caller
supplies energy and gradient callables plus optional projection,
preconditioning, and per-step hooks; the loop owns step-size control,
stopping, and the monotonicity guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = ["DescentResult", "armijo_minimize"]

_ARMIJO_C = 1e-4
_MAX_HALVINGS = 60


@dataclass
class DescentResult:
    x: np.ndarray
    energy: float
    gradient: np.ndarray
    iterations: int
    converged: bool
    stop_reason: str
    grad_inf: float


def armijo_minimize(
    x0: np.ndarray,
    energy: Callable[[np.ndarray], float],
    gradient: Callable[[np.ndarray], np.ndarray],
    *,
    grad_tol: float,
    energy_tol: float,
    max_iters: int,
    free_mask: Optional[np.ndarray] = None,
    project: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    precondition: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    on_accept: Optional[Callable[[np.ndarray, int], Optional[np.ndarray]]] = None,
    step0: float = 1.0,
    stall_window: int = 10,
) -> DescentResult:
    """Minimize a smooth energy by preconditioned steepest descent.

    Stops when the masked gradient sup-norm drops below grad_tol, when the
    relative energy change stays below energy_tol for stall_window accepted
    steps, when the line search fails to find descent, or at max_iters.
    Convergence is claimed only when the gradient criterion is met at exit,
    so a stalled run cannot masquerade as a solved one.

    The Armijo test uses the projected step: the trial point is
    project(x - t*d) and acceptance requires
    E(trial) <= E(x) - c * <g, x - trial>, so the projection (a clamp, for
    the strip solver) never breaks the descent guarantee.  The accepted step
    size is doubled for the next iteration.
    """

    def masked(grad_full: np.ndarray) -> np.ndarray:
        if free_mask is None:
            return grad_full
        return np.where(free_mask, grad_full, 0.0)

    x = np.array(x0, dtype=float)
    e = energy(x)
    g = masked(gradient(x))
    t = step0
    stall = 0
    steps = 0
    reason = "max_iters"

    while steps < max_iters:
        if np.max(np.abs(g)) <= grad_tol:
            reason = "grad_tol"
            break

        d = precondition(g) if precondition is not None else g
        if precondition is not None and not np.sum(g * d) > 0.0:
            d = g  # preconditioner lost positivity in roundoff; fall back

        accepted = False
        for _ in range(_MAX_HALVINGS):
            trial = x - t * d
            if project is not None:
                trial = project(trial)
            decrease = np.sum(g * (x - trial))
            if decrease > 0.0:
                e_trial = energy(trial)
                if e_trial <= e - _ARMIJO_C * decrease:
                    accepted = True
                    break
            t *= 0.5
        if not accepted:
            reason = "line_search_failure"
            break
        if e_trial > e:
            raise RuntimeError("energy increased across an accepted step")

        rel_drop = abs(e - e_trial) / max(abs(e), 1.0)
        stall = stall + 1 if rel_drop <= energy_tol else 0
        x, e = trial, e_trial
        steps += 1
        t *= 2.0

        if on_accept is not None:
            replaced = on_accept(x, steps)
            if replaced is not None:
                x = replaced
                e = energy(x)
        g = masked(gradient(x))

        if stall >= stall_window:
            reason = "stalled"
            break

    grad_inf = float(np.max(np.abs(g)))
    return DescentResult(
        x=x,
        energy=e,
        gradient=g,
        iterations=steps,
        converged=grad_inf <= grad_tol,
        stop_reason=reason,
        grad_inf=grad_inf,
    )
