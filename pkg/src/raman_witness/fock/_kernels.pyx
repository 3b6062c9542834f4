# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Matrix-free application of the reduced Raman Hamiltonian on a 4-mode grid."""
import numpy as np
cimport cython
from libc.math cimport sqrt


def apply_hamiltonian(double complex[:, :, :, ::1] psi,
                      double complex[:, :, :, ::1] out,
                      double[::1] w,
                      double g, double chi):
    """out = H psi for H = sum_m w_m n_m + g(a b+ c+ + h.c.) + chi(a c d+ + h.c.).

    Ladder terms leaving the grid are dropped.
    """
    cdef Py_ssize_t Na = psi.shape[0], Nb = psi.shape[1]
    cdef Py_ssize_t Nc = psi.shape[2], Nd = psi.shape[3]
    cdef Py_ssize_t na, nb, nc, nd
    cdef double diag, s
    cdef double complex acc
    cdef double wa = w[0], wb = w[1], wc = w[2], wd = w[3]
    cdef Py_ssize_t nmax = max(max(Na, Nb), max(Nc, Nd)) + 1
    cdef double[::1] sq = np.sqrt(np.arange(nmax, dtype=np.float64))

    with nogil:
        for na in range(Na):
            for nb in range(Nb):
                for nc in range(Nc):
                    for nd in range(Nd):
                        diag = wa * na + wb * nb + wc * nc + wd * nd
                        acc = diag * psi[na, nb, nc, nd]
                        # a b+ c+ : |na+1, nb-1, nc-1> -> |na, nb, nc>
                        if na + 1 < Na and nb > 0 and nc > 0:
                            s = sq[na + 1] * sq[nb] * sq[nc]
                            acc = acc + g * s * psi[na + 1, nb - 1, nc - 1, nd]
                        # a+ b c
                        if na > 0 and nb + 1 < Nb and nc + 1 < Nc:
                            s = sq[na] * sq[nb + 1] * sq[nc + 1]
                            acc = acc + g * s * psi[na - 1, nb + 1, nc + 1, nd]
                        # a c d+
                        if na + 1 < Na and nc + 1 < Nc and nd > 0:
                            s = sq[na + 1] * sq[nc + 1] * sq[nd]
                            acc = acc + chi * s * psi[na + 1, nb, nc + 1, nd - 1]
                        # a+ c+ d
                        if na > 0 and nc > 0 and nd + 1 < Nd:
                            s = sq[na] * sq[nc] * sq[nd + 1]
                            acc = acc + chi * s * psi[na - 1, nb, nc - 1, nd + 1]
                        out[na, nb, nc, nd] = acc
    return np.asarray(out)
