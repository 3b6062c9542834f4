"""Controlled-error propagation ``psi(t) = exp(-i H t) psi(0)``.

Taylor series over sub-steps of size ``dt`` with ``||H|| dt <= STEP_NORM``.
The order of each step is chosen from an a priori bound on the series
remainder, so the accumulated error in state norm is at most ``tol``
given the Gershgorin bound on ``||H||``.
"""
from __future__ import annotations

import math

import numpy as np

from .hamiltonian import RamanHamiltonian
from .state import NORM_TOL, QuantumState

STEP_NORM = 1.0
MAX_ORDER = 60


class ToleranceNotMet(RuntimeError):
    pass


def _taylor_order(rho: float, target: float) -> int:
    # remainder of exp series: sum_{j>K} rho^j/j! <= rho^(K+1)/(K+1)! / (1 - rho/(K+2))
    term = 1.0
    for k in range(1, MAX_ORDER + 1):
        term *= rho / k
        nxt = term * rho / (k + 1)
        if nxt / max(1e-300, 1.0 - rho / (k + 2)) <= target:
            return k
    raise ToleranceNotMet(f"Taylor order above {MAX_ORDER} needed for step norm {rho}")


def propagate(psi: np.ndarray, H: RamanHamiltonian, t: float, tol: float = 1e-10,
              norm_bound: float | None = None) -> np.ndarray:
    """Return ``exp(-i H t) psi`` for a raw amplitude array (not modified)."""
    psi = np.array(psi, dtype=complex, copy=True).reshape(H.space.shape)
    if t == 0:
        return psi
    hnorm = H.norm_bound() if norm_bound is None else norm_bound
    if hnorm == 0:
        return psi
    nsteps = max(1, math.ceil(hnorm * abs(t) / STEP_NORM))
    dt = t / nsteps
    order = _taylor_order(hnorm * abs(dt), tol / nsteps)

    term = np.empty_like(psi)
    scratch = np.empty_like(psi)
    for _ in range(nsteps):
        term[...] = psi
        for k in range(1, order + 1):
            H.matvec(term, out=scratch)
            scratch *= -1j * dt / k
            term, scratch = scratch, term
            psi += term
    return psi


def evolve(state: QuantumState, H: RamanHamiltonian, t: float, tol: float = 1e-10) -> QuantumState:
    """Evolve ``state`` by ``t`` seconds under ``H``."""
    state.check_norm()
    out = QuantumState(propagate(state.amplitudes, H, t, tol), state.space)
    drift = abs(out.norm() - 1.0)
    if drift > NORM_TOL:
        raise ToleranceNotMet(f"norm drifted by {drift:.3g} during evolution")
    return out


def trajectory(state: QuantumState, H: RamanHamiltonian, times, tol: float = 1e-10):
    """Yield ``(t, state)`` along increasing ``times``, reusing each step."""
    times = np.asarray(times, dtype=float)
    if np.any(np.diff(times) < 0) or (times.size and times[0] < 0):
        raise ValueError("times must be non-negative and sorted")
    hnorm = H.norm_bound()
    # tolerance split evenly over the segments
    seg_tol = tol / max(1, times.size)
    current, t_prev = state.copy(), 0.0
    current.check_norm()
    for t in times:
        amp = propagate(current.amplitudes, H, t - t_prev, seg_tol, norm_bound=hnorm)
        current = QuantumState(amp, state.space)
        drift = abs(current.norm() - 1.0)
        if drift > NORM_TOL:
            raise ToleranceNotMet(f"norm drifted by {drift:.3g} at t={t:g}")
        t_prev = t
        yield float(t), current
