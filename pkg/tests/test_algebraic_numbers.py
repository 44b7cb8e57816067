import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from mpmath import iv
from sympy import Poly

from scripts.algebraic.algebraic_numbers import (
    X,
    AlgebraicNumber,
    linear_form_height,
    locate_root,
    modified_height,
    weil_height,
)
from scripts.common.errors import NonPositiveValue
from scripts.common.intervals import certainly_gt, hull, midpoint, overlaps, working_precision

PHI = AlgebraicNumber((1, -1, -1), 1)


def _close(x, value, tol=1e-12):
    return abs(float(midpoint(x)) - value) < tol


def test_weil_height_of_rationals():
    assert _close(weil_height(2), math.log(2))
    assert _close(weil_height(Fraction(3, 2)), math.log(3))
    assert _close(weil_height(Fraction(-1, 7)), math.log(7))
    assert _close(weil_height(1), 0)


def test_weil_height_of_golden_ratio():
    assert _close(weil_height(PHI), math.log((1 + math.sqrt(5)) / 2) / 2)
    assert abs(float(midpoint(weil_height(PHI))) - 0.2406) < 1e-4


def test_modified_heights():
    assert _close(modified_height(AlgebraicNumber.from_rational(2), 1), 1)
    assert _close(modified_height(PHI, 2), 0.5)
    assert _close(modified_height(AlgebraicNumber.from_rational(10), 1), math.log(10))


def test_modified_height_needs_positive_real():
    with pytest.raises(NonPositiveValue):
        modified_height(AlgebraicNumber.from_rational(-2), 1)


def test_linear_form_height():
    assert _close(linear_form_height((1, 5, -3)), math.log(5))
    assert _close(linear_form_height((1, -1)), 1)
    assert _close(linear_form_height((1, 40, -97)), math.log(97))


def test_golden_ratio_identities():
    # phi^2 = phi + 1 and phi * (phi - 1) = 1
    assert PHI.power(2) == PHI.add(1)
    assert PHI.multiply(PHI.subtract(1)) == AlgebraicNumber.from_rational(1)
    assert PHI.inverse() == PHI.subtract(1)


def test_negate_and_absolute():
    conjugate = AlgebraicNumber((1, -1, -1), 0)
    assert conjugate.sign() == -1
    assert conjugate.absolute() == conjugate.negate()
    assert conjugate.negate().minpoly == (1, 1, -1)
    assert PHI.absolute() == PHI


def test_sqrt2_squared_is_rational():
    sqrt2 = AlgebraicNumber((1, 0, -2), 1)
    assert sqrt2.multiply(sqrt2).rational_value() == 2
    assert sqrt2.divide(sqrt2).rational_value() == 1


def test_reducible_polynomial_rejected():
    with pytest.raises(ValueError):
        AlgebraicNumber((1, 0, -4), 0)


def test_locate_root_picks_matching_factor():
    poly = Poly((X**2 - 2) * (X - 3), X)
    root = locate_root(poly, lambda bits: hull(Fraction(14142, 10000), Fraction(14152, 10000)))
    assert root.minpoly == (1, 0, -2)


@st.composite
def algebraic_numbers(draw, max_degree=2):
    degree = draw(st.integers(1, max_degree))
    coeffs = [draw(st.integers(1, 3))] + draw(
        st.lists(st.integers(-4, 4), min_size=degree, max_size=degree)
    )
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    factors = Poly(coeffs, X).factor_list()[1]
    factor = factors[draw(st.integers(0, len(factors) - 1))][0]
    number = AlgebraicNumber.from_poly(factor, 0)
    return AlgebraicNumber(number.minpoly, draw(st.integers(0, number.degree - 1)))


def _not_above(lhs, rhs):
    return not certainly_gt(lhs, rhs)


@settings(suppress_health_check=[HealthCheck.too_slow])
@given(algebraic_numbers(), algebraic_numbers())
def test_height_of_sum_and_product(x, y):
    with working_precision(128):
        hx, hy = weil_height(x), weil_height(y)
        assert _not_above(weil_height(x.add(y)), hx + hy + iv.ln(iv.mpf(2)))
        assert _not_above(weil_height(x.subtract(y)), hx + hy + iv.ln(iv.mpf(2)))
        assert _not_above(weil_height(x.multiply(y)), hx + hy)


@settings(suppress_health_check=[HealthCheck.too_slow])
@given(algebraic_numbers(max_degree=4), st.integers(-3, 3))
def test_height_power_rule(x, k):
    if x.is_zero:
        return
    with working_precision(128):
        assert overlaps(weil_height(x.power(k)), abs(k) * weil_height(x))


@given(algebraic_numbers(max_degree=4))
def test_height_is_invariant_under_inverse(x):
    if x.is_zero:
        return
    with working_precision(128):
        assert overlaps(weil_height(x.inverse()), weil_height(x))
