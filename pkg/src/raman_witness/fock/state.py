"""Coherent product states on the truncated space."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

from ..model import CoherentInputs
from .space import FockSpace

NORM_TOL = 1e-9


class TailMassTooLarge(ValueError):
    pass


@dataclass
class QuantumState:
    amplitudes: np.ndarray  # shape == space.shape
    space: FockSpace

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def check_norm(self, tol: float = NORM_TOL) -> None:
        n = self.norm()
        if abs(n - 1.0) > tol:
            raise ValueError(f"state norm {n!r} outside 1 +/- {tol}")

    def copy(self) -> "QuantumState":
        return QuantumState(self.amplitudes.copy(), self.space)


def _mode_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    n = np.arange(cutoff + 1)
    if alpha == 0:
        v = np.zeros(cutoff + 1, dtype=complex)
        v[0] = 1.0
        return v
    r, theta = abs(alpha), np.angle(alpha)
    log_mag = -0.5 * r**2 + n * np.log(r) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag) * np.exp(1j * n * theta)


def tail_mass(inputs: CoherentInputs, space: FockSpace) -> float:
    """Probability the untruncated coherent product state puts outside the grid."""
    # 1 - prod(1 - sf_m), evaluated without cancellation
    log_kept = sum(np.log1p(-poisson.sf(n, abs(x) ** 2))
                   for x, n in zip(inputs.alphas, space.cutoffs))
    return float(-np.expm1(log_kept))


def coherent_state(inputs: CoherentInputs, space: FockSpace,
                   max_tail: float = 1e-10) -> tuple[QuantumState, float]:
    """Truncated, renormalised ``|a1>|a2>|a3>|a4>`` and its discarded tail mass."""
    tail = tail_mass(inputs, space)
    if tail > max_tail:
        raise TailMassTooLarge(
            f"tail mass {tail:.3g} exceeds {max_tail:.3g}; raise the cutoffs {space.cutoffs}")
    va, vb, vc, vd = (_mode_amplitudes(x, n) for x, n in zip(inputs.alphas, space.cutoffs))
    psi = np.einsum("i,j,k,l->ijkl", va, vb, vc, vd)
    psi /= np.linalg.norm(psi)
    return QuantumState(np.ascontiguousarray(psi), space), tail
