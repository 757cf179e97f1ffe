"""
Tests for the V-function identities and the basic hypergeometric summations
"""

from fractions import Fraction

import pytest

from src.identities import (
    IndexRange,
    merged,
    orthogonality_sides,
    pfaff_saalschutz,
    pfaff_saalschutz_multi,
    q_binomial_theorem,
    q_vandermonde,
    staircase_summation,
    star_star_sides,
    verify_appendixB,
    verify_orthogonality,
    verify_star_star,
    verify_sum1,
    verify_sum2,
    verify_sum2_from_star_star,
)

Q = Fraction(3)
A, B, C, Z = Fraction(2, 5), Fraction(7, 3), Fraction(5, 11), Fraction(4, 9)


def test_index_range_enumerations():
    r = IndexRange(1, 2)
    assert list(r.points()) == [(0,), (1,), (2,)]
    assert list(r.above((1,))) == [(1,), (2,)]
    assert len(list(r.chains(2))) == 6
    for a, b, c, d in IndexRange(2, 1).star_quadruples():
        assert all(x >= y for x, y in zip(a, b)) and all(x >= y for x, y in zip(c, d))
    for a, b, c in IndexRange(2, 1).wedge_triples():
        assert all(x <= y for x, y in zip(a, b)) and all(x <= y for x, y in zip(a, c))


@pytest.mark.parametrize("N", [0, 1, 3])
def test_q_binomial_theorem(N):
    lhs, rhs = q_binomial_theorem(N, Z, Q)
    assert lhs == rhs


def test_q_vandermonde_first_order_by_hand():
    lhs, rhs = q_vandermonde(1, A, C, Q)
    assert lhs == rhs == (A - C) / (1 - C)


@pytest.mark.parametrize("N", [1, 2, 4])
def test_pfaff_saalschutz(N):
    lhs, rhs = pfaff_saalschutz(N, A, B, C, Q)
    assert lhs == rhs


def test_multi_truncation_reduces_to_one_dimension():
    assert pfaff_saalschutz_multi([2], A, B, C, Q) == pfaff_saalschutz(2, A, B, C, Q)


def test_staircase_summation():
    lhs, rhs = staircase_summation(2, [Fraction(2, 7), Fraction(3, 5)], Q)
    assert lhs == rhs


def test_star_star_single_component():
    x, xp, y, yp = Fraction(2), Fraction(5, 3), Fraction(7, 4), Fraction(3, 2)
    lhs, rhs = star_star_sides((2,), (1,), (1,), (0,), x, xp, y, yp, Q)
    assert lhs == rhs


def test_orthogonality_single_component():
    lhs, rhs = orthogonality_sides((2,), (0,), Fraction(3, 2), Fraction(5, 7), Q)
    assert lhs == rhs


def test_v_function_identities(quick):
    for report in (
        verify_star_star(1, 2, quick),
        verify_star_star(2, 1, quick),
        verify_sum2(2, 1, quick),
        verify_sum2_from_star_star(1, 2, quick),
        verify_orthogonality(2, 2, quick),
        verify_sum1(3, 1, 1, quick),
    ):
        assert report.passed, (report.identity, report.witness)


def test_summation_formula_collection(quick):
    reports = verify_appendixB(quick, max_order=3, max_dims=2, max_cap=2)
    assert set(reports) == {
        "q-binomial", "q-vandermonde", "pfaff-saalschutz",
        "pfaff-saalschutz-staircase", "pfaff-saalschutz-multi", "staircase-summation",
    }
    combined = merged(reports, "summations")
    assert combined.passed, combined.witness


def test_perturbed_sums_fail(perturbed):
    assert not verify_star_star(1, 1, perturbed).passed
    assert not verify_orthogonality(1, 1, perturbed).passed
    reports = verify_appendixB(perturbed, max_order=1, max_dims=1, max_cap=1)
    assert all(not r.passed for r in reports.values())
