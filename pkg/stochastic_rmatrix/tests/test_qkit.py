"""
Tests for multi-index operations, bases and q-special functions
"""

from fractions import Fraction

import pytest

from src.exactnum import LengthMismatch, PoleEncountered, WeightExceedsJ
from src.qkit import (
    between,
    box,
    bracket,
    compositions,
    dot,
    enumerate_basis,
    lambda_function,
    phi,
    phi_hat,
    qbinomial,
    qform_Q,
    qpochhammer,
    reverse_tau,
    rotate_sigma,
    sigma_inverse,
    sigma_power,
    tau_sigma,
    unit,
    v_func,
    weight,
)

Q = Fraction(2)


def test_weight_dot_and_quadratic_form():
    assert weight((1, 2, 0)) == 3
    assert dot((1, 2), (3, 4)) == 11
    # Q(a, b) = sum_{l<k} a_l b_k
    assert qform_Q((1, 2), (3, 4)) == 4
    assert qform_Q((1, 1, 1), (1, 1, 1)) == 3


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        dot((1,), (1, 2))


def test_sigma_rotation_and_inverse():
    assert rotate_sigma((1, 0), 2) == (0, 1)
    assert rotate_sigma((0, 0), 2) == (0, 2)
    for a in enumerate_basis(4, 2):
        assert sigma_inverse(rotate_sigma(a, 2), 2) == a
        b = a
        for _ in range(4):
            b = rotate_sigma(b, 2)
        assert b == a
        assert sigma_power(a, 2, 1) == rotate_sigma(a, 2)


def test_sigma_requires_weight_at_most_J():
    with pytest.raises(WeightExceedsJ):
        rotate_sigma((2, 1), 2)


def test_tau_sigma():
    assert reverse_tau((1, 2, 3)) == (3, 2, 1)
    assert tau_sigma((1, 0), 2) == (1, 0)
    assert tau_sigma((0, 1), 2) == (1, 1)


def test_bracket():
    # (i, j) - (I - |i|)(J - |j|)
    assert bracket((1, 0), (0, 1), 1, 2) == 0
    assert bracket((0, 0), (0, 0), 1, 2) == -2
    assert bracket((1, 0), (1, 0), 1, 1) == 1


def test_enumerators():
    assert list(box(2, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert list(between((0, 1), (1, 1))) == [(0, 1), (1, 1)]
    assert list(between((1, 0), (0, 1))) == []
    assert sorted(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert unit(3, 2) == (0, 1, 0)


def test_basis_order_and_dimension():
    basis = enumerate_basis(3, 2)
    assert basis.indices == ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0))
    assert basis.dim == 6
    assert enumerate_basis(4, 3).dim == 20
    assert basis.ordinal[(1, 0)] == 3


def test_qpochhammer_positive_and_negative_orders():
    x = Fraction(3, 5)
    assert qpochhammer(x, Q, 0) == 1
    assert qpochhammer(x, Q, 2) == (1 - x) * (1 - 2 * x)
    assert qpochhammer(x, Q, -1) == 1 / (1 - x / 2)
    assert qpochhammer(x, Q, 3) == qpochhammer(x, Q, 1) * qpochhammer(x * Q, Q, 2)


def test_qpochhammer_negative_order_pole():
    with pytest.raises(PoleEncountered):
        qpochhammer(Fraction(2), Q, -1)


def test_qbinomial():
    assert qbinomial(4, 2, Q) == 35
    assert qbinomial(3, 0, Q) == 1
    assert qbinomial(3, 4, Q) == 0


@pytest.mark.parametrize("beta", [(2,), (1, 1), (2, 1), (1, 0, 2)])
def test_phi_sums_to_one(beta):
    lam, mu = Fraction(3, 7), Fraction(5, 11)
    q = Fraction(4)
    total = sum(phi(g, beta, lam, mu, q) for g in between((0,) * len(beta), beta))
    assert total == 1


def test_phi_vanishes_outside_support():
    assert phi((2,), (1,), Fraction(1, 3), Fraction(1, 5), Q) == 0


def test_phi_cancels_common_factors():
    # lambda = 1 and mu q = 1: (1 - lambda) cancels against (1 - mu q)
    assert phi((1,), (2,), Fraction(1), 1 / Q, Q) == (1 + Q) / Q
    t = Fraction(3, 7)
    generic = phi((1,), (2,), t, t / Q, Q)
    assert generic == (1 / Q) * (1 - 1 / Q) / (1 - t / Q) * (1 + Q)


def test_phi_genuine_pole():
    with pytest.raises(PoleEncountered):
        phi((0,), (1,), Fraction(1, 3), Fraction(1), Q)


def test_phi_hat_one_component_equals_phi():
    lam, mu = Fraction(3, 7), Fraction(5, 11)
    assert phi_hat((1,), (2,), lam, mu, Q) == phi((1,), (2,), lam, mu, Q)


def test_v_func_diagonal_is_one_and_support():
    x = Fraction(2, 3)
    assert v_func(x, Q, (1, 1), (1, 1)) == 1
    assert v_func(x, Q, (0, 1), (1, 0)) == 0


def test_v_func_at_one_is_delta():
    # (x^2; q^2)_k vanishes at x = 1 for k >= 1
    assert v_func(Fraction(1), Q, (2, 0), (1, 0)) == 0


def test_lambda_function_trivial_rank():
    assert lambda_function(1, 1, Fraction(5), Fraction(2), Q) == 1
