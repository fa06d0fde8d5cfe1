"""Quantum estimation of the Jaynes-Cummings coupling constant."""
from .estimation import (
    FisherReport,
    classical_fi,
    drho_analytic,
    qfi_pure_unitary,
    qfi_report,
    qfi_spectral,
    sld,
)
from .hilbert import (
    SpectralDecomposition,
    eig_hermitian,
    partial_trace,
    tensor_product,
    unitary_from_generator,
)
from .inference import EstimationError, EstimationReport, McConfig, mle, run_experiment, sample_outcomes
from .jc_model import (
    OutcomeDistribution,
    ProbeSpec,
    build_generator,
    evolve,
    excitation_expectation,
    field_distribution,
    joint_distribution,
    probe_state,
    qubit_distribution,
    reduced_field,
    reduced_qubit,
)

__version__ = "0.1.0"
