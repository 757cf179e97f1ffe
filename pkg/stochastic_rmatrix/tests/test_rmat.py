"""
Tests for the sparse operators, the stochastic R-matrix and its identities
"""

from fractions import Fraction

import pytest

from src.exactnum import ConfigError, DimensionMismatch, PoleEncountered, SingularPartialTranspose, deriv_part, dual_variable, value_part
from src.qkit import enumerate_basis
from src.rmat import (
    FIRST,
    SECOND,
    ModelConfig,
    Operator,
    TensorSpace,
    build_L,
    build_M,
    build_M_inverse,
    build_P,
    build_Rbar,
    build_Rtilde,
    build_S,
    build_S21,
    crossing_product,
    crossing_g,
    embed,
    gauss_jordan_inverse,
    kron,
    verify_crossing,
    verify_l_operators,
    verify_m_invariance,
    verify_modified_ybe,
    verify_nondiff_inverse,
    verify_nondiff_specialization,
    verify_regularity,
    verify_rtilde_methods,
    verify_stochastic,
    verify_symmetries,
    verify_unitarity,
    verify_ybe,
)

Q = Fraction(2)
SIX_VERTEX = ModelConfig(2, 1, 1)


# operators -----------------------------------------------------------------

def _pair(n=2, J=1):
    V = enumerate_basis(n, J)
    return TensorSpace.of(V, V)


def test_permutation_is_an_involution():
    space = _pair(3, 1)
    P = build_P(space)
    assert P @ P == Operator.identity(space)
    assert P.at(((0, 1), (1, 0)), ((1, 0), (0, 1))) == 1


def test_embed_reversed_sites_conjugates_by_permutation():
    S = build_S(ModelConfig(3, 1, 1), Fraction(5, 3), Q)
    P = build_P(S.space)
    assert embed(S, S.space, (1, 0)) == P @ S @ P


def test_kron_and_partial_trace():
    V = TensorSpace.of(enumerate_basis(2, 1))
    A = Operator.from_dense(V, [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]])
    B = Operator.from_dense(V, [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(1)]])
    AB = kron(A, B)
    assert AB.dim == 4
    assert AB.trace_out(1) == A.scale(B.trace())
    assert AB.trace_out(0) == B.scale(A.trace())


def test_partial_transpose_twice_is_identity():
    S = build_S(ModelConfig(3, 1, 2), Fraction(7, 2), Q)
    assert S.partial_transpose(1).partial_transpose(1) == S


def test_inverse_and_singular_matrix():
    inv = gauss_jordan_inverse([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]])
    assert inv == [[1, -1], [-1, 2]]
    with pytest.raises(SingularPartialTranspose):
        gauss_jordan_inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_mismatched_spaces():
    with pytest.raises(DimensionMismatch):
        Operator.identity(_pair(2, 1)) @ Operator.identity(_pair(3, 1))


def test_perturbed_copy_differs_in_one_entry():
    I = Operator.identity(_pair())
    witness = I.perturbed(0, 1).compare(I)
    assert witness is not None
    assert witness.lhs == "1/7"


# R-matrix --------------------------------------------------------------------

def test_model_config_validation():
    with pytest.raises(ConfigError):
        ModelConfig(1, 1, 1)
    with pytest.raises(ConfigError):
        ModelConfig(3, 0, 1)


def test_six_vertex_worked_example():
    S = build_S(SIX_VERTEX, Fraction(9), Q).dense()
    assert S[0][0] == 1 and S[3][3] == 1
    assert [S[1][1], S[2][1]] == [Fraction(32, 35), Fraction(3, 35)]
    assert [S[1][2], S[2][2]] == [Fraction(27, 35), Fraction(8, 35)]


@pytest.mark.parametrize("n,I,J", [(2, 1, 1), (3, 1, 2), (3, 2, 2), (4, 1, 1)])
def test_columns_sum_to_one_and_charge_is_conserved(n, I, J):
    S = build_S(ModelConfig(n, I, J), Fraction(13, 5), Fraction(3, 2))
    assert all(total == 1 for total in S.column_sums())
    assert S.conserves_charge()


def test_regularity_at_one():
    cfg = ModelConfig(3, 2, 2)
    assert build_S(cfg, Fraction(1), Q) == build_P(cfg.space())


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3), Fraction(1, 5), Fraction(7, 3)])
def test_six_vertex_regular_at_one(q):
    assert build_S(SIX_VERTEX, Fraction(1), q) == build_P(SIX_VERTEX.space())


def test_unequal_spins_at_shifted_point_are_stochastic():
    cfg = ModelConfig(2, 1, 2)
    S = build_S(cfg, Q, Q)
    assert all(total == 1 for total in S.column_sums())


def test_derivative_at_one_through_dual_numbers():
    S = build_S(SIX_VERTEX, dual_variable(1, 2), Q)
    stay = S.at(((0,), (1,)), ((0,), (1,)))
    # q^2 (u - 1) / (q^2 u - 1), differentiated in x at x = 1
    assert value_part(stay) == 0
    assert deriv_part(stay) == Fraction(8, 3)
    assert value_part(S.at(((1,), (1,)), ((1,), (1,)))) == 1


def test_genuine_pole_still_raises():
    with pytest.raises(PoleEncountered):
        build_S(SIX_VERTEX, Fraction(1, 4), Q)


def test_unitarity_at_a_point():
    cfg = ModelConfig(3, 1, 2)
    u = Fraction(7, 3)
    product = build_S(cfg, u, Q) @ build_S21(cfg, 1 / u, Q)
    assert product == Operator.identity(cfg.space())


def test_rbar_has_same_support_as_s():
    cfg = ModelConfig(3, 1, 2)
    x = Fraction(3, 2)
    S, R = build_S(cfg, x * x, Q), build_Rbar(cfg, x, Q)
    assert {(r, c) for r, c, _ in S.entries()} == {(r, c) for r, c, _ in R.entries()}


def test_m_matrix_inverse():
    M = build_M(3, 2, Q)
    assert M @ build_M_inverse(3, 2, Q) == Operator.identity(M.space)
    assert M.at(((1, 0),), ((1, 0),)) == 16


def test_crossing_unitarity_at_a_point():
    cfg = ModelConfig(3, 1, 2)
    u = Fraction(5)
    assert crossing_product(cfg, u, Q) == Operator.identity(cfg.space(), crossing_g(cfg, u, Q))


def test_rtilde_methods_agree_at_a_point():
    cfg = ModelConfig(2, 1, 1)
    u = Fraction(5, 2)
    assert build_Rtilde(cfg, u, Q) == build_Rtilde(cfg, u, Q, method="crossing")
    with pytest.raises(ConfigError):
        build_Rtilde(cfg, u, Q, method="guess")


@pytest.mark.parametrize("side", [FIRST, SECOND])
def test_l_operator_is_stochastic(side):
    L = build_L(3, 2, side, Fraction(7, 3), Q)
    assert all(total == 1 for total in L.column_sums())


def test_l_operator_bad_side():
    with pytest.raises(ConfigError):
        build_L(3, 1, "middle", Fraction(2), Q)


# verifiers -----------------------------------------------------------------------

@pytest.mark.parametrize("n,I,J,K", [(2, 1, 1, 1), (2, 1, 2, 1), (3, 1, 1, 2)])
def test_yang_baxter(n, I, J, K, quick):
    report = verify_ybe(n, I, J, K, quick)
    assert report.passed, report.witness


@pytest.mark.parametrize("n,I,J", [(2, 1, 1), (3, 1, 2), (3, 2, 2)])
def test_unitarity_crossing_and_stochasticity(n, I, J, quick):
    cfg = ModelConfig(n, I, J)
    for verifier in (verify_unitarity, verify_crossing, verify_stochastic):
        report = verifier(cfg, quick)
        assert report.passed, (report.identity, report.witness)


def test_regularity_and_symmetries(quick):
    assert verify_regularity(3, 2, quick).passed
    reports = verify_symmetries(ModelConfig(3, 1, 1), quick)
    assert set(reports) == {"first", "second", "third", "tau-sigma", "equal-spin"}
    for name, report in reports.items():
        assert report.passed, (name, report.witness)


def test_symmetries_unequal_spins_skip_open_checks(quick):
    reports = verify_symmetries(ModelConfig(3, 1, 2), quick)
    assert "second" not in reports and "equal-spin" not in reports
    assert all(r.passed for r in reports.values())


def test_crossing_objects(quick):
    cfg = ModelConfig(3, 1, 1)
    assert verify_m_invariance(cfg, quick).passed
    assert verify_rtilde_methods(cfg, quick).passed
    assert verify_modified_ybe(2, 1, quick).passed


def test_l_operators_match_r_matrix(quick):
    assert verify_l_operators(3, 2, quick).passed


def test_non_difference_r_matrix(quick):
    assert verify_nondiff_inverse(2, 3, quick).passed
    assert verify_nondiff_specialization(ModelConfig(2, 1, 2), quick).passed


@pytest.mark.parametrize("verifier,args", [
    (verify_ybe, (2, 1, 1, 1)),
    (verify_regularity, (2, 1)),
    (verify_unitarity, (SIX_VERTEX,)),
    (verify_crossing, (SIX_VERTEX,)),
    (verify_stochastic, (SIX_VERTEX,)),
])
def test_perturbed_entry_is_reported(verifier, args, perturbed):
    report = verifier(*args, perturbed)
    assert not report.passed
    assert report.witness is not None


def test_perturbed_symmetries_fail(perturbed):
    reports = verify_symmetries(ModelConfig(3, 1, 1), perturbed)
    assert all(not r.passed for r in reports.values())
