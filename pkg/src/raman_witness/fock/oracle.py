"""Brute-force witness trajectories from exact truncated-space evolution."""
from __future__ import annotations

import numpy as np

from ..model import CoherentInputs, Frame, RamanParams
from ..modes import ALL_CRITERIA, ALL_PAIRS
from .evolve import trajectory
from .hamiltonian import build_hamiltonian, reduced_frequencies
from .moments import Moment, expectation, oracle_witness, rotate_to_frame
from .space import build_space
from .state import QuantumState, coherent_state


def frame_state(state: QuantumState, p: RamanParams, t: float) -> QuantumState:
    """Map a reduced-Hamiltonian state at ``t`` into the frame of ``p``.

    Co-rotating: undo the reduced free phases. Absolute: add the phases of
    the constants of motion, ``exp(-i (w_a C1 + w_c C2) t)``.
    """
    if p.frame is Frame.ABSOLUTE:
        wa, _, wc, _ = p.mode_frequencies()
        # w_a C1 + w_c C2 as per-mode frequencies
        return rotate_to_frame(state, -np.array([wa, wa - wc, wc, wa + wc]), t)
    return rotate_to_frame(state, reduced_frequencies(p), t)


def oracle_scan(p: RamanParams, inputs: CoherentInputs, times, cutoffs,
                pairs=ALL_PAIRS, criteria=ALL_CRITERIA, tol: float = 1e-10,
                max_tail: float = 1e-10, with_conserved: bool = False):
    """Oracle witness values along ``times``.

    Returns ``{(pair, criterion): array}``; with ``with_conserved`` also a
    dict of norm and conserved-quantity traces.
    """
    space = build_space(cutoffs)
    H = build_hamiltonian(p, space)
    psi0, _ = coherent_state(inputs, space, max_tail=max_tail)
    times = np.asarray(times, dtype=float)
    out = {(pr, cr): np.empty(times.size) for pr in pairs for cr in criteria}
    extra = {"norm": [], "C1": [], "C2": []}
    for i, (t, st) in enumerate(trajectory(psi0, H, times, tol)):
        framed = frame_state(st, p, t)
        for pr in pairs:
            for cr in criteria:
                out[(pr, cr)][i] = oracle_witness(pr, cr, framed)
        if with_conserved:
            n = [expectation(st, Moment.NUMBER, m).real for m in range(4)]
            extra["norm"].append(st.norm())
            extra["C1"].append(n[0] + n[1] + n[3])
            extra["C2"].append(n[2] - n[1] + n[3])
    if with_conserved:
        return out, {k: np.array(v) for k, v in extra.items()}
    return out
