"""Pure-numpy implementation of the hot kernels (used when the compiled
extension is unavailable)."""
from __future__ import annotations

import numpy as np


def apply_hamiltonian(psi, out, w, g, chi):
    """out = H psi for H = sum_m w_m n_m + g(a b+ c+ + h.c.) + chi(a c d+ + h.c.).

    Same contract as the compiled kernel: ``psi`` and ``out`` are C-contiguous
    complex arrays of shape ``(Na, Nb, Nc, Nd)``.
    """
    Na, Nb, Nc, Nd = psi.shape
    na = np.arange(Na, dtype=float)[:, None, None, None]
    nb = np.arange(Nb, dtype=float)[None, :, None, None]
    nc = np.arange(Nc, dtype=float)[None, None, :, None]
    nd = np.arange(Nd, dtype=float)[None, None, None, :]
    out[...] = (w[0] * na + w[1] * nb + w[2] * nc + w[3] * nd) * psi

    if g != 0 and Na > 1 and Nb > 1 and Nc > 1:
        # a b+ c+ : out[na, nb, nc] += g sqrt((na+1) nb nc) psi[na+1, nb-1, nc-1]
        amp = g * np.sqrt(na[1:] * nb[:, 1:] * nc[:, :, 1:])
        out[:-1, 1:, 1:, :] += amp * psi[1:, :-1, :-1, :]
        # a+ b c : out[na, nb, nc] += g sqrt(na (nb+1) (nc+1)) psi[na-1, nb+1, nc+1]
        out[1:, :-1, :-1, :] += amp * psi[:-1, 1:, 1:, :]
    if chi != 0 and Na > 1 and Nc > 1 and Nd > 1:
        # a c d+ : out[na, nc, nd] += chi sqrt((na+1)(nc+1) nd) psi[na+1, nc+1, nd-1]
        amp = chi * np.sqrt(na[1:] * nc[:, :, 1:] * nd[..., 1:])
        out[:-1, :, :-1, 1:] += amp * psi[1:, :, 1:, :-1]
        # a+ c+ d
        out[1:, :, 1:, :-1] += amp * psi[:-1, :, :-1, 1:]
    return out
