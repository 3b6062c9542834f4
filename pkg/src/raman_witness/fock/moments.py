"""Expectation values on a truncated state and the witnesses built from them.

Nothing here uses perturbation theory: every witness is assembled from
moments of the exactly evolved state vector.
"""
from __future__ import annotations

import enum

import numpy as np

from ..modes import Criterion, Mode, ModePair
from .state import QuantumState


class Moment(str, enum.Enum):
    MEAN = "x"              # <x>
    NUMBER = "Nx"           # <N_x>
    NUMBER_PRODUCT = "NxNy"  # <N_x N_y>
    X_YDAG = "x y+"         # <x y+>
    XY = "x y"              # <x y>
    DELTA_NUMBER = "dx+ dx"  # <dx+ dx>
    DELTA_XY = "dx dy"      # <dx dy>
    DELTA_X_YDAG = "dx dy+"  # <dx dy+>
    U_VARIANCE = "var u"    # u = (x + x+ + y + y+)/sqrt2
    V_VARIANCE = "var v"    # v = (x - x+ + y - y+)/(i sqrt2)


def lower(psi: np.ndarray, mode: int) -> np.ndarray:
    """Annihilation operator of ``mode`` applied to a grid-shaped array."""
    mode = int(mode)
    n = psi.shape[mode]
    out = np.zeros_like(psi)
    src = [slice(None)] * 4
    dst = [slice(None)] * 4
    src[mode] = slice(1, n)
    dst[mode] = slice(0, n - 1)
    view = [1, 1, 1, 1]
    view[mode] = n - 1
    out[tuple(dst)] = np.sqrt(np.arange(1, n, dtype=float)).reshape(view) * psi[tuple(src)]
    return out


def raise_(psi: np.ndarray, mode: int) -> np.ndarray:
    """Creation operator, truncated at the cutoff."""
    mode = int(mode)
    n = psi.shape[mode]
    out = np.zeros_like(psi)
    src = [slice(None)] * 4
    dst = [slice(None)] * 4
    src[mode] = slice(0, n - 1)
    dst[mode] = slice(1, n)
    view = [1, 1, 1, 1]
    view[mode] = n - 1
    out[tuple(dst)] = np.sqrt(np.arange(1, n, dtype=float)).reshape(view) * psi[tuple(src)]
    return out


def rotate_to_frame(state: QuantumState, omegas, t: float) -> QuantumState:
    """Apply ``exp(+i sum_m w_m n_m t)``; removes free phases ``exp(-i w_m t)``."""
    if t == 0 or not np.any(omegas):
        return state
    grids = state.space.number_grids()
    phase = sum(w * n for w, n in zip(omegas, grids)) * t
    return QuantumState(state.amplitudes * np.exp(1j * phase), state.space)


def _vdot(x, y) -> complex:
    return complex(np.vdot(x.ravel(), y.ravel()))


def expectation(state: QuantumState, kind: Moment, x: Mode, y: Mode | None = None) -> complex:
    """Moment ``kind`` of mode ``x`` (and ``y`` for two-mode moments)."""
    psi = state.amplitudes
    xp = lower(psi, x)
    if kind is Moment.MEAN:
        return _vdot(psi, xp)
    if kind is Moment.NUMBER:
        return _vdot(xp, xp)
    if kind is Moment.DELTA_NUMBER:
        m = _vdot(psi, xp)
        return _vdot(xp, xp) - abs(m) ** 2
    if y is None:
        raise ValueError(f"{kind} needs a second mode")
    yp = lower(psi, y)
    if kind is Moment.NUMBER_PRODUCT:
        yxp = lower(xp, y)
        return _vdot(yxp, yxp)
    if kind is Moment.X_YDAG:
        return _vdot(yp, xp)  # <y+ x> = <x y+> for distinct modes
    if kind is Moment.XY:
        return _vdot(psi, lower(xp, y))
    mx, my = _vdot(psi, xp), _vdot(psi, yp)
    if kind is Moment.DELTA_XY:
        return _vdot(psi, lower(xp, y)) - mx * my
    if kind is Moment.DELTA_X_YDAG:
        return _vdot(yp, xp) - mx * np.conj(my)
    if kind in (Moment.U_VARIANCE, Moment.V_VARIANCE):
        # u = (A + A+)/sqrt2, v = (A - A+)/(i sqrt2) with A = x + y. Written in
        # normal order, [A, A+] = 2 supplied analytically, so the truncated
        # raising operator never enters.
        A = xp + yp
        mean = _vdot(psi, A)
        AA = _vdot(psi, lower(A, x) + lower(A, y))
        AdA = _vdot(A, A).real
        sign = 1.0 if kind is Moment.U_VARIANCE else -1.0
        centred = mean.real if kind is Moment.U_VARIANCE else mean.imag
        return sign * AA.real + AdA + 1.0 - 2.0 * centred**2
    raise ValueError(f"unknown moment kind {kind!r}")


def oracle_witness(pair: ModePair, criterion: Criterion, state: QuantumState) -> float:
    """HZ-1, HZ-2 or Duan value of ``pair`` from exact moments of ``state``."""
    x, y = pair.first, pair.second
    if criterion is Criterion.HZ1:
        val = (expectation(state, Moment.NUMBER_PRODUCT, x, y)
               - abs(expectation(state, Moment.X_YDAG, x, y)) ** 2)
    elif criterion is Criterion.HZ2:
        val = (expectation(state, Moment.NUMBER, x) * expectation(state, Moment.NUMBER, y)
               - abs(expectation(state, Moment.XY, x, y)) ** 2)
    elif criterion is Criterion.DUAN:
        val = (expectation(state, Moment.U_VARIANCE, x, y)
               + expectation(state, Moment.V_VARIANCE, x, y) - 2.0)
    else:
        raise ValueError(criterion)
    return float(np.real(val))
