from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from sympy import Poly

from scripts.algebraic.algebraic_numbers import X, AlgebraicNumber, weil_height
from scripts.algebraic.independence import mult_independent, simplest_between
from scripts.common.intervals import certainly_positive

PHI = AlgebraicNumber((1, -1, -1), 1)
PSI = AlgebraicNumber((1, -1, -1, -1), 0)


@pytest.mark.parametrize(
    "low, high, expected",
    [
        (Fraction(1, 3), Fraction(1, 2), Fraction(1, 2)),
        (Fraction(3, 10), Fraction(4, 10), Fraction(1, 3)),
        (Fraction(7, 3), Fraction(7, 3), Fraction(7, 3)),
        (Fraction(5, 2), Fraction(7, 2), Fraction(3)),
    ],
)
def test_simplest_between(low, high, expected):
    assert simplest_between(low, high) == expected


@given(
    st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(1000), max_denominator=10**4),
    st.fractions(min_value=Fraction(0), max_value=Fraction(1, 10), max_denominator=10**4),
)
def test_simplest_between_lies_inside(low, spread):
    high = low + spread
    found = simplest_between(low, high)
    assert low <= found <= high
    for den in range(1, found.denominator):
        numerator = -(-low * den // 1)
        assert Fraction(numerator, den) > high


def test_distinct_primes_are_independent():
    verdict = mult_independent(2, 3)
    assert verdict.passed
    assert verdict.witness is None


def test_exact_power_is_dependent():
    verdict = mult_independent(2, 8)
    assert not verdict.passed
    assert verdict.witness == (3, 1)


def test_powers_of_four_and_two():
    verdict = mult_independent(2, 4)
    assert not verdict.passed
    assert verdict.witness == (2, 1)


def test_sign_mismatch_doubles_exponents():
    verdict = mult_independent(-2, 8)
    assert not verdict.passed
    assert verdict.witness == (6, 2)


def test_golden_ratio_and_tribonacci_root_are_independent():
    verdict = mult_independent(PHI, PSI)
    assert verdict.passed
    assert verdict.certified_to == 10**6
    assert "height_ratio" in verdict.extra


def test_golden_ratio_and_its_square_are_dependent():
    square = AlgebraicNumber((1, -3, 1), 1)
    verdict = mult_independent(PHI, square)
    assert not verdict.passed
    assert verdict.witness == (2, 1)


def test_number_and_itself_are_dependent():
    verdict = mult_independent(PHI, PHI)
    assert not verdict.passed
    assert verdict.witness == (1, 1)


@st.composite
def nontorsion_numbers(draw):
    degree = draw(st.integers(1, 2))
    coeffs = [draw(st.integers(1, 3))] + draw(st.lists(st.integers(-4, 4), min_size=degree, max_size=degree))
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    factors = Poly(coeffs, X).factor_list()[1]
    factor = factors[draw(st.integers(0, len(factors) - 1))][0]
    number = AlgebraicNumber.from_poly(factor, 0)
    number = AlgebraicNumber(number.minpoly, draw(st.integers(0, number.degree - 1)))
    # zero and roots of unity have height 0
    assume(not number.is_zero)
    assume(certainly_positive(weil_height(number)))
    return number


@settings(suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(nontorsion_numbers(), st.integers(2, 5))
def test_number_and_its_power_are_dependent(x, j):
    y = x.power(j)
    verdict = mult_independent(x, y)
    assert not verdict.passed
    p, q = verdict.witness
    assert p > 0 and q > 0
    assert x.power(p) == y.power(q)
