"""
Tests for exact scalars, dual numbers, sampling and the evaluation harness
"""

from fractions import Fraction

import pytest

from src.exactnum import (
    EXHAUSTED,
    FAIL,
    PASS,
    POLE,
    Budget,
    DualScalar,
    NegativeRate,
    PoleEncountered,
    Witness,
    ZeroDenominator,
    ZeroToNegativePower,
    compare_values,
    deriv_part,
    dual_variable,
    exact,
    fmt_rat,
    ipow,
    parse_rat,
    rat,
    run_at_points,
    sample_point,
    value_part,
)


def test_rat_is_reduced_with_sign_on_numerator():
    value = rat(6, -4)
    assert value == Fraction(-3, 2)
    assert fmt_rat(value) == "-3/2"


def test_rat_zero_denominator():
    with pytest.raises(ZeroDenominator):
        rat(1, 0)


@pytest.mark.parametrize("text,expected", [("1/3", Fraction(1, 3)), ("-2", Fraction(-2)), ("0.25", Fraction(1, 4))])
def test_parse_rat(text, expected):
    assert parse_rat(text) == expected


def test_fmt_rat_integer_keeps_denominator():
    assert fmt_rat(Fraction(5)) == "5/1"
    assert fmt_rat(3) == "3/1"


def test_ipow_negative_and_zero():
    assert ipow(Fraction(2, 3), -2) == Fraction(9, 4)
    assert ipow(2, 3) == 8
    with pytest.raises(ZeroToNegativePower):
        ipow(Fraction(0), -1)


def test_zero_to_negative_power_is_a_pole():
    assert issubclass(ZeroToNegativePower, PoleEncountered)
    assert issubclass(PoleEncountered, ZeroDivisionError)


def test_exact_promotes_ints_and_keeps_duals():
    assert isinstance(exact(1), Fraction)
    d = dual_variable(1, 2)
    assert exact(d) is d
    assert exact("2/7") == Fraction(2, 7)


def test_dual_arithmetic_gives_derivatives():
    x = dual_variable(3)
    square = x * x
    assert value_part(square) == 9
    assert deriv_part(square) == 6
    inverse = 1 / x
    assert inverse == DualScalar(Fraction(1, 3), Fraction(-1, 9))
    assert (x ** -2).deriv == Fraction(-2, 27)
    assert (x - 1) * 2 == DualScalar(Fraction(4), Fraction(2))


def test_dual_reciprocal_of_zero_value():
    with pytest.raises(PoleEncountered):
        1 / DualScalar(Fraction(0), Fraction(1))


def test_dual_equals_plain_rational_when_derivative_vanishes():
    assert DualScalar(Fraction(5)) == 5
    assert deriv_part(Fraction(5)) == 0


def test_sample_point_deterministic_and_q_not_one():
    a = sample_point(["q", "u"], seed=5, bound=3)
    b = sample_point(["q", "u"], seed=5, bound=3)
    assert a.as_strings() == b.as_strings()
    for seed in range(40):
        assert sample_point(["q"], seed, bound=2)["q"] != 1


def test_sample_point_rejects_tiny_bound():
    with pytest.raises(ValueError):
        sample_point(["q"], 0, bound=1)


def test_harness_passes_at_requested_points():
    report = run_at_points("trivial", lambda p: None, ["q", "u"], points=4, seed=1)
    assert report.status == PASS
    assert report.points_tried == 4


def test_harness_resamples_after_pole():
    calls = []

    def check(p):
        calls.append(p)
        if len(calls) == 1:
            raise ZeroDivisionError("pole")
        return None

    report = run_at_points("one pole", check, ["q"], points=2, seed=3)
    assert report.passed
    assert [o.status for o in report.outcomes] == [POLE, PASS, PASS]


def test_harness_gives_up_after_too_many_poles():
    def check(p):
        raise PoleEncountered("always")

    report = run_at_points("always pole", check, ["q"], points=1, max_resample=3)
    assert report.status == EXHAUSTED
    assert not report.passed


def test_harness_stops_at_first_failure():
    report = Budget(points=3).run("fails", lambda p: Witness(("r", "c"), "1/1", "2/1"), ["q"])
    assert report.status == FAIL
    assert report.points_tried == 1
    assert report.witness.to_dict()["location"] == ["r", "c"]


def test_compare_values():
    assert compare_values((0,), Fraction(1, 2), Fraction(2, 4)) is None
    witness = compare_values((0, 1), Fraction(1), Fraction(2))
    assert witness.location == (0, 1)


def test_negative_rate_lists_transitions():
    error = NegativeRate([("0|1", "1|0", -0.5)])
    assert "0|1->1|0" in str(error)
    assert error.transitions[0][2] == -0.5
