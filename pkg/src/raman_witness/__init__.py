"""Perturbative intermodal-entanglement witnesses for four-mode Raman
scattering, with a brute-force Fock-space oracle."""
from .model import (CoefficientSet, CoherentInputs, DegenerateDetunings, Frame,
                    InconsistentFrequencies, ParameterError, Process, RamanParams,
                    ZeroDetuning, ZeroPump, compute_coefficients, paper_inputs,
                    paper_params, validate_params)
from .modes import ALL_CRITERIA, ALL_PAIRS, Criterion, Mode, ModePair
from .witnesses import (Classification, EmptyGrid, Verdict, WitnessSample, classify,
                        classify_values, duan_witness, hz1_witness, hz2_witness,
                        specialize, witness, witness_series)

__version__ = "0.1.0"
