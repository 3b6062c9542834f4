"""The Raman Hamiltonian on a truncated Fock space.

The full Hamiltonian ``sum_m w_m n_m + g(a b+ c+ + h.c.) + chi(a c d+ + h.c.)``
is split as ``w_a C1 + w_c C2 + H_red`` with the constants of motion
``C1 = n_a + n_b + n_d`` and ``C2 = n_c - n_b + n_d``.  The remainder

    H_red = dw1 n_b - dw2 n_d + g(a b+ c+ + h.c.) + chi(a c d+ + h.c.)

depends on the detunings only, so every trajectory is propagated with
``H_red`` and the (diagonal, commuting) ``C1``/``C2`` phases are applied
afterwards when absolute frequencies are requested.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..model import RamanParams, validate_params
from . import kernels
from .space import FockSpace


def reduced_frequencies(p: RamanParams) -> np.ndarray:
    """Mode frequencies ``(0, dw1, 0, -dw2)`` of the reduced Hamiltonian."""
    return np.array([0.0, p.d_omega1, 0.0, -p.d_omega2])


@dataclass(frozen=True)
class RamanHamiltonian:
    """Matrix-free reduced Hamiltonian bound to a Fock space."""

    space: FockSpace
    w: np.ndarray
    g: float
    chi: float

    def matvec(self, psi: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
        psi = np.ascontiguousarray(psi.reshape(self.space.shape), dtype=complex)
        if out is None:
            out = np.empty_like(psi)
        kernels.apply_hamiltonian(psi, out, self.w, float(self.g), float(self.chi))
        return out

    def norm_bound(self) -> float:
        """Gershgorin bound on the spectral norm (max absolute row sum)."""
        na, nb, nc, nd = self.space.number_grids()
        Na, Nb, Nc, Nd = self.space.cutoffs
        diag = np.abs(self.w[0] * na + self.w[1] * nb + self.w[2] * nc + self.w[3] * nd)
        s1 = np.sqrt((na + 1) * nb * nc) * (na < Na)
        s2 = np.sqrt(na * (nb + 1) * (nc + 1)) * (nb < Nb) * (nc < Nc)
        s3 = np.sqrt((na + 1) * (nc + 1) * nd) * (na < Na) * (nc < Nc)
        s4 = np.sqrt(na * nc * (nd + 1)) * (nd < Nd)
        rows = diag + abs(self.g) * (s1 + s2) + abs(self.chi) * (s3 + s4)
        return float(rows.max())

    def to_sparse(self) -> sp.csr_matrix:
        return build_sparse(self.space, self.w, self.g, self.chi)


def build_hamiltonian(p: RamanParams, space: FockSpace) -> RamanHamiltonian:
    validate_params(p)
    return RamanHamiltonian(space, reduced_frequencies(p), p.g, p.chi)


def build_sparse(space: FockSpace, w, g: float, chi: float) -> sp.csr_matrix:
    """Explicit CSR matrix of the same operator the kernels apply."""
    shape = space.shape
    idx = np.arange(space.dim).reshape(shape)
    na, nb, nc, nd = space.number_grids()
    rows, cols, vals = [], [], []

    diag = (w[0] * na + w[1] * nb + w[2] * nc + w[3] * nd) * np.ones(shape)
    rows.append(idx.ravel())
    cols.append(idx.ravel())
    vals.append(diag.ravel().astype(complex))

    def add(dst, src, amp):
        amp = np.broadcast_to(amp, dst.shape)
        keep = amp != 0
        for r, c in ((dst, src), (src, dst)):  # term and its Hermitian conjugate
            rows.append(r[keep])
            cols.append(c[keep])
            vals.append(amp[keep].astype(complex))

    if min(shape[0], shape[1], shape[2]) > 1:
        # <na, nb, nc| a b+ c+ |na+1, nb-1, nc-1>
        add(idx[:-1, 1:, 1:, :], idx[1:, :-1, :-1, :],
            g * np.sqrt(na[1:] * nb[:, 1:] * nc[:, :, 1:]))
    if min(shape[0], shape[2], shape[3]) > 1:
        # <na, nc, nd| a c d+ |na+1, nc+1, nd-1>
        add(idx[:-1, :, :-1, 1:], idx[1:, :, 1:, :-1],
            chi * np.sqrt(na[1:] * nc[:, :, 1:] * nd[..., 1:]))

    H = sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                      shape=(space.dim, space.dim)).tocsr()
    H.eliminate_zeros()
    return H
