"""Kernel dispatch: the compiled extension when it was built, numpy otherwise.

Set ``RAMAN_WITNESS_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _fallback

BACKEND = "python"
apply_hamiltonian = _fallback.apply_hamiltonian

if not os.environ.get("RAMAN_WITNESS_PURE_PYTHON"):
    try:
        from . import _kernels
    except ImportError:  # extension not built
        pass
    else:
        apply_hamiltonian = _kernels.apply_hamiltonian
        BACKEND = "cython"

__all__ = ["BACKEND", "apply_hamiltonian"]
