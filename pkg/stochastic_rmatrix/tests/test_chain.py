"""
Tests for the open chain: transfer matrix, Hamiltonian, Markov diagnostics and simulation
"""

from fractions import Fraction

import numpy as np
import pytest

from src.boundary import RIGHT_UPPER
from src.chain import (
    GENERATOR,
    HAMILTONIAN,
    ChainSpec,
    GeneratorMatrix,
    double_row_transfer,
    exact_rank,
    gillespie_simulate,
    hamiltonian_from_transfer,
    hamiltonian_local,
    hamiltonian_terms,
    histogram_frame,
    jump_frame,
    left_eigenvalue_of_ones,
    markov_diagnostics,
    occupancy_fractions,
    periodic_hamiltonian,
    rates_to_float,
    residual,
    simulate_many,
    stationary_exact,
    trace_ktilde_at_one,
    verify_hamiltonian,
    verify_transfer,
)
from src.exactnum import ConfigError, DegenerateKernel, NegativeRate
from src.rmat import Operator

SIM_POINT = ChainSpec(2, 1, 2, Fraction(2), Fraction(1))


@pytest.fixture
def spec():
    return ChainSpec(2, 1, 2, Fraction(3), Fraction(2, 5))


def test_chain_spec_validation():
    with pytest.raises(ConfigError):
        ChainSpec(2, 1, 0, Fraction(2), Fraction(1))
    with pytest.raises(ConfigError):
        ChainSpec(2, 1, 2, Fraction(1), Fraction(1))
    with pytest.raises(ConfigError):
        ChainSpec(2, 1, 2, Fraction(2), Fraction(1), right_family="left-upper")


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 2
    assert exact_rank([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]) == 2
    assert exact_rank([[0, 0], [0, 0]]) == 0


def test_stationary_two_state_example():
    a, b = Fraction(1), Fraction(3)
    pi = stationary_exact([[-a, b], [a, -b]])
    assert pi == [b / (a + b), a / (a + b)]


def test_stationary_needs_one_dimensional_kernel():
    with pytest.raises(DegenerateKernel):
        stationary_exact([[0, 0], [0, 0]])


def test_transfer_at_one_is_scalar(spec):
    T1 = double_row_transfer(spec, Fraction(1)).op
    assert T1 == Operator.identity(T1.space, trace_ktilde_at_one(spec))


def test_transfer_matrices_commute_and_preserve_ones(spec):
    Tu = double_row_transfer(spec, Fraction(5, 2)).op
    Tv = double_row_transfer(spec, Fraction(2, 7)).op
    assert Tu @ Tv == Tv @ Tu
    c, witness = left_eigenvalue_of_ones(Tu)
    assert witness is None and c is not None


def test_hamiltonian_columns_sum_to_zero(spec):
    H = hamiltonian_local(spec)
    assert H.role == HAMILTONIAN
    assert all(total == 0 for total in H.op.column_sums())


def test_hamiltonian_local_equals_transfer_derivative(spec):
    assert hamiltonian_local(spec).op == hamiltonian_from_transfer(spec).op


def test_hamiltonian_terms_are_separated(spec):
    terms = hamiltonian_terms(spec)
    assert len(terms["bulk"]) == spec.N - 1
    assert all(total == 0 for total in terms["local"].column_sums())


def test_right_upper_boundary_also_stochastic():
    spec = ChainSpec(2, 1, 2, Fraction(3), Fraction(2, 5), right_family=RIGHT_UPPER)
    assert all(total == 0 for total in hamiltonian_local(spec).op.column_sums())


def test_generator_conventions(spec):
    H = hamiltonian_local(spec)
    M = H.to_generator()
    assert M.role == GENERATOR
    assert all(sum(row) == 0 for row in M.dense())
    assert M.column_convention() == H.column_convention()
    with pytest.raises(ConfigError):
        double_row_transfer(spec, Fraction(2)).to_generator()


def test_rank_and_stationary_state_at_simulation_point():
    H = hamiltonian_local(SIM_POINT)
    assert exact_rank(H.dense()) == H.dim - 1
    pi = stationary_exact(H)
    assert sum(pi) == 1
    assert all(v == 0 for v in residual(H, pi))


def test_periodic_control_requires_two_sites():
    with pytest.raises(ConfigError):
        periodic_hamiltonian(ChainSpec(2, 1, 1, Fraction(2), Fraction(1)))
    assert all(total == 0 for total in periodic_hamiltonian(SIM_POINT).op.column_sums())


def test_markov_diagnostics():
    report = markov_diagnostics(SIM_POINT, [Fraction(3), Fraction(1, 2)], [(Fraction(2), Fraction(1))])
    assert report.stochastic_transfer
    assert report.annihilated_by_ones
    assert report.rank_is_maximal
    assert report.sign_survey["q=2/1,nu=1/1"] == []
    assert report.summary()["dim"] == 4


def test_verifiers(quick):
    spec = ChainSpec(2, 1, 2, Fraction(2), Fraction(1))
    transfer = verify_transfer(spec, quick)
    assert transfer.passed, transfer.witness
    hamiltonian = verify_hamiltonian(spec, quick)
    assert hamiltonian.passed, hamiltonian.witness
    assert "rank" in hamiltonian.notes


def test_verifiers_negative_control(perturbed):
    spec = ChainSpec(2, 1, 2, Fraction(2), Fraction(1))
    assert not verify_transfer(spec, perturbed).passed
    assert not verify_hamiltonian(spec, perturbed).passed


# simulation ---------------------------------------------------------------------

def test_negative_rates_are_refused():
    with pytest.raises(NegativeRate) as info:
        rates_to_float([[-1, -1], [1, -1]])
    assert info.value.transitions == [("0", "1", -1.0)]


def test_bulk_hopping_rates_change_sign_below_q_one():
    second_occupied, first_occupied = ((0,), (1,)), ((1,), (0,))
    M = hamiltonian_local(SIM_POINT).to_generator()
    assert M.op.at(second_occupied, first_occupied) == Fraction(1, 3)
    assert M.op.at(first_occupied, second_occupied) == Fraction(4, 3)
    assert M.negative_rates() == []

    below = ChainSpec(2, 1, 2, Fraction(1, 2), Fraction(1))
    rates = {(a, b): r for a, b, r in hamiltonian_local(below).negative_rates()}
    assert rates[("0|1", "1|0")] == pytest.approx(-4 / 3)
    assert rates[("1|0", "0|1")] == pytest.approx(-1 / 3)


def test_chain_with_negative_bulk_rates_is_refused():
    spec = ChainSpec(2, 1, 2, Fraction(1, 2), Fraction(1))
    generator = hamiltonian_local(spec).to_generator()
    assert generator.negative_rates()
    with pytest.raises(NegativeRate):
        gillespie_simulate(generator, 10.0, seed=1)


def test_simulation_is_deterministic_in_seed():
    generator = [[-1, 1], [3, -3]]
    first = gillespie_simulate(generator, 50.0, seed=7)
    second = gillespie_simulate(generator, 50.0, seed=7)
    assert first.times == second.times and first.states == second.states
    assert np.isclose(first.occupancy.sum(), 50.0)


def test_simulation_rejects_bad_arguments():
    with pytest.raises(ConfigError):
        gillespie_simulate([[-1, 1], [1, -1]], 0.0, seed=1)
    with pytest.raises(ConfigError):
        gillespie_simulate([[-1, 1], [1, -1]], 1.0, seed=1, initial_state=5)


def test_two_state_occupancy_matches_stationary_law():
    result = gillespie_simulate([[-1, 1], [3, -3]], 1e9, seed=3, max_events=100_000)
    exact = stationary_exact([[-1, 3], [1, -3]])
    assert result.events == 100_000
    assert np.allclose(result.fractions, [float(p) for p in exact], atol=0.02)


def test_chain_occupancy_matches_exact_nullspace():
    generator = hamiltonian_local(SIM_POINT).to_generator()
    results = simulate_many(generator, 1e9, seeds=[5], max_events=100_000)
    exact = stationary_exact(generator)
    fractions = occupancy_fractions(results)
    assert np.allclose(fractions, [float(p) for p in exact], atol=0.02)


def test_frames():
    generator = GeneratorMatrix(GENERATOR, Operator.from_dense(
        SIM_POINT.site_space(), [[Fraction(-1), Fraction(1)], [Fraction(2), Fraction(-2)]]))
    result = gillespie_simulate(generator, 20.0, seed=2)
    jumps = jump_frame(result)
    assert list(jumps.columns) == ["time", "state", "label"]
    assert jumps["label"].iloc[0] == "0"
    histogram = histogram_frame([result], [Fraction(2, 3), Fraction(1, 3)])
    assert list(histogram.columns) == ["state", "label", "fraction", "exact", "deviation"]
    assert np.isclose(histogram["fraction"].sum(), 1.0)
