"""Truncated four-mode Fock space.

Basis states ``|n_a, n_b, n_c, n_d>`` are stored in C (row-major) order
over the grid ``shape = (N_a+1, N_b+1, N_c+1, N_d+1)``; mode ``a`` varies
slowest and mode ``d`` fastest.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIM = 2_000_000


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class FockSpace:
    cutoffs: tuple[int, int, int, int]

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return tuple(n + 1 for n in self.cutoffs)

    @property
    def dim(self) -> int:
        return int(np.prod(self.shape))

    def index(self, occupations) -> int:
        """Flat position of ``(n_a, n_b, n_c, n_d)``."""
        return int(np.ravel_multi_index(tuple(occupations), self.shape))

    def occupations(self, index: int) -> tuple[int, int, int, int]:
        return tuple(int(i) for i in np.unravel_index(index, self.shape))

    def number_grids(self) -> list[np.ndarray]:
        """Occupation numbers of each mode, broadcastable over the grid."""
        grids = []
        for axis, size in enumerate(self.shape):
            view = [1, 1, 1, 1]
            view[axis] = size
            grids.append(np.arange(size, dtype=float).reshape(view))
        return grids


def build_space(cutoffs, max_dim: int = MAX_DIM) -> FockSpace:
    cutoffs = tuple(int(n) for n in cutoffs)
    if len(cutoffs) != 4:
        raise ValueError("need one cutoff per mode (a, b, c, d)")
    if any(n < 0 for n in cutoffs):
        raise ValueError(f"cutoffs must be non-negative, got {cutoffs}")
    space = FockSpace(cutoffs)
    if space.dim > max_dim:
        raise DimensionTooLarge(f"dimension {space.dim} exceeds bound {max_dim}")
    return space
