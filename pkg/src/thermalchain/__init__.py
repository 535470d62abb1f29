"""Qubit chains between two thermal baths: Lindblad dynamics, steady states
and first-to-last-qubit entanglement."""

from .analysis import (
    XCoefficients,
    analytic_concurrence_2q,
    analytic_steady_state_2q,
    analytic_steady_state_3q,
    concurrence,
    concurrence_first_last,
    gibbs_state,
    w_state,
    x_coefficients,
)
from .dynamics import (
    Liouvillian,
    apply_generator,
    build_liouvillian,
    evolve,
    spectral_gap,
    steady_state,
)
from .linalg import (
    hermitian_eig,
    kron,
    partial_trace,
    purity,
    trace_distance,
    validate_density_matrix,
)
from .model import (
    BathSpec,
    ChainSpec,
    JumpChannel,
    SpectralDecomposition,
    bose_occupation,
    build_channels,
    build_hamiltonian,
    channel_rates,
    diagonalize,
    eigenoperators,
    two_bath_chain,
)

__version__ = "0.1.0"

__all__ = [
    "BathSpec",
    "ChainSpec",
    "JumpChannel",
    "Liouvillian",
    "SpectralDecomposition",
    "XCoefficients",
    "analytic_concurrence_2q",
    "analytic_steady_state_2q",
    "analytic_steady_state_3q",
    "apply_generator",
    "bose_occupation",
    "build_channels",
    "build_hamiltonian",
    "build_liouvillian",
    "channel_rates",
    "concurrence",
    "concurrence_first_last",
    "diagonalize",
    "eigenoperators",
    "evolve",
    "gibbs_state",
    "hermitian_eig",
    "kron",
    "partial_trace",
    "purity",
    "spectral_gap",
    "steady_state",
    "trace_distance",
    "two_bath_chain",
    "validate_density_matrix",
    "w_state",
    "x_coefficients",
]
