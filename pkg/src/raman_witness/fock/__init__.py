"""Truncated Fock-space oracle for the four-mode Raman Hamiltonian."""
from .evolve import ToleranceNotMet, evolve, propagate, trajectory
from .hamiltonian import RamanHamiltonian, build_hamiltonian, build_sparse, reduced_frequencies
from .kernels import BACKEND
from .moments import Moment, expectation, lower, oracle_witness, raise_, rotate_to_frame
from .oracle import frame_state, oracle_scan
from .space import DimensionTooLarge, FockSpace, build_space
from .state import QuantumState, TailMassTooLarge, coherent_state, tail_mass

__all__ = [
    "BACKEND",
    "DimensionTooLarge",
    "FockSpace",
    "Moment",
    "QuantumState",
    "RamanHamiltonian",
    "TailMassTooLarge",
    "ToleranceNotMet",
    "build_hamiltonian",
    "build_space",
    "build_sparse",
    "coherent_state",
    "evolve",
    "expectation",
    "frame_state",
    "lower",
    "oracle_scan",
    "oracle_witness",
    "propagate",
    "raise_",
    "reduced_frequencies",
    "rotate_to_frame",
    "tail_mass",
    "trajectory",
]
