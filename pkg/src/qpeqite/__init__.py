"""QPE-based imaginary time evolution for diagonal (combinatorial) Hamiltonians."""
from .hamiltonians import (
    DiagonalHamiltonian,
    SpinSequence,
    ZMonomial,
    autocorrelation,
    evaluate,
    labs_constant,
    labs_hamiltonian,
    sidelobe_energy,
    sidelobe_hamiltonian,
    with_offset,
)
from .qite import QiteOutcome, apply_qite, min_tau, overlap_without_qite, qite_sweep
from .qpe import InitialState, QpeResult, RegisterConfig, energy_estimates, register_amplitude, run_qpe
from .spectrum import Spectrum, enumerate_spectrum, fit_gap_exponent, load_archive

__version__ = "0.1.0"
