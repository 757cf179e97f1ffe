"""Open chain: transfer matrix, Hamiltonian, Markov diagnostics and simulation."""

from .markov import (
    MarkovDiagnostics,
    exact_rank,
    left_eigenvalue_of_ones,
    markov_diagnostics,
    residual,
    stationary_exact,
    verify_hamiltonian,
    verify_transfer,
)
from .model import GENERATOR, HAMILTONIAN, LEFT_FAMILIES, RIGHT_FAMILIES, TRANSFER, ChainSpec, GeneratorMatrix
from .simulate import (
    SimulationResult,
    gillespie_simulate,
    histogram_frame,
    jump_frame,
    occupancy_fractions,
    rates_to_float,
    simulate_many,
)
from .transfer import (
    chain_k,
    chain_ktilde,
    double_row_transfer,
    hamiltonian_from_transfer,
    hamiltonian_local,
    hamiltonian_terms,
    hamiltonian_terms_bulk,
    periodic_hamiltonian,
    trace_ktilde_at_one,
)
