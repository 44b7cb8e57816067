import math
from fractions import Fraction

from scripts.common.intervals import contains_integer, midpoint, working_precision
from scripts.recurrence.binet import (
    binet_coefficients,
    binet_number,
    coefficient_envelope,
    evaluate_binet,
    exact_binet,
)
from scripts.recurrence.recurrence_core import RecurrenceSpec, char_poly, terms
from scripts.recurrence.roots import analyze_roots

INV_SQRT5 = 1 / math.sqrt(5)


def _solve(spec):
    roots = analyze_roots(char_poly(spec))
    return roots, binet_coefficients(spec, roots)


def test_fibonacci_coefficients(fib):
    roots, coefficients = _solve(fib)
    (a1,), (a2,) = coefficients
    assert abs(float(midpoint(a1.real)) - INV_SQRT5) < 1e-12
    assert abs(float(midpoint(a2.real)) + INV_SQRT5) < 1e-12
    assert 0 in a1.imag


def test_single_root_coefficient_is_one():
    _, coefficients = _solve(RecurrenceSpec("pow2", (2,), (1,)))
    (a1,), = coefficients
    assert contains_integer(a1, 1)


def test_confluent_system_for_doubled_root():
    spec = RecurrenceSpec("doubled", (4, -4), (1, 2))
    roots, coefficients = _solve(spec)
    assert roots.multiplicities == (2,)
    a0, a1 = coefficients[0]
    assert contains_integer(a0, 1)
    assert contains_integer(a1, 0)
    assert terms(spec, 2)[2] == 4


def test_reconstruction_contains_terms(trib):
    roots, coefficients = _solve(trib)
    values = terms(trib, 40)
    with working_precision(roots.precision_bits):
        for n, u in enumerate(values):
            assert contains_integer(evaluate_binet(coefficients, roots, n, roots.precision_bits), u)


def test_exact_binet_for_fibonacci(fib):
    roots = analyze_roots(char_poly(fib))
    exact = exact_binet(fib, roots)
    # 1/sqrt(5) = (2 alpha - 1) / 5
    assert exact.coefficient_poly((1, -1, -1), 0) == (Fraction(-1, 5), Fraction(2, 5))
    a = binet_number(exact, roots.dominant_root, 0)
    assert a.minpoly == (5, 0, -1)
    assert a.sign() == 1


def test_exact_binet_for_rational_roots():
    # U_n = 3^n + 5 * 2^n
    spec = RecurrenceSpec("three_two", (5, -6), (6, 13))
    roots = analyze_roots(char_poly(spec))
    exact = exact_binet(spec, roots)
    assert binet_number(exact, roots.roots[0], 0).rational_value() == 1
    assert binet_number(exact, roots.roots[1], 0).rational_value() == 5


def test_coefficient_envelope_bounds_tail(fib):
    _, coefficients = _solve(fib)
    assert coefficient_envelope(coefficients) >= Fraction(4472135954, 10**10)
    assert coefficient_envelope(coefficients) < Fraction(4472135956, 10**10)
