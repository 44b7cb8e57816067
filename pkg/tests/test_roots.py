from fractions import Fraction

import pytest
from sympy import Poly

from scripts.common.errors import NoDominantRoot
from scripts.common.intervals import lower, midpoint, upper
from scripts.recurrence.recurrence_core import X, RecurrenceSpec, char_poly
from scripts.recurrence.roots import analyze_roots, nondegeneracy_check

GOLDEN = 1.6180339887498949


def test_fibonacci_roots(fib):
    roots = analyze_roots(char_poly(fib), Fraction(1, 2**100))
    assert roots.dominant
    assert roots.multiplicities == (1, 1)
    alpha = roots.dominant_root.real_enclosure()
    assert abs(float(midpoint(alpha)) - GOLDEN) < 1e-12
    assert upper(alpha) - lower(alpha) < Fraction(1, 2**100)
    second = roots.roots[1].real_enclosure()
    assert abs(float(midpoint(second)) + 1 / GOLDEN) < 1e-12


def test_double_root_is_dominant():
    roots = analyze_roots(Poly(X**2 - 4 * X + 4, X))
    assert roots.count == 1
    assert roots.multiplicities == (2,)
    assert roots.dominant_root.rational_value() == 2


def test_equal_moduli_have_no_dominant_root():
    with pytest.raises(NoDominantRoot) as info:
        analyze_roots(Poly(X**2 - 4, X))
    assert info.value.reason == NoDominantRoot.EQUAL_MODULUS


def test_complex_pair_on_top_is_rejected():
    # +2i and -2i share the top modulus
    with pytest.raises(NoDominantRoot):
        analyze_roots(Poly((X**2 + 4) * (2 * X - 1), X))


def test_non_expanding_root_is_rejected():
    with pytest.raises(NoDominantRoot) as info:
        analyze_roots(Poly(2 * X - 1, X))
    assert info.value.reason == NoDominantRoot.NOT_EXPANDING


def test_nondegeneracy_passes_for_fibonacci(fib):
    verdict = nondegeneracy_check(analyze_roots(char_poly(fib)))
    assert verdict.passed


def test_nondegeneracy_fails_for_opposite_roots():
    roots = analyze_roots(Poly(X**2 - 4, X), require_dominant=False)
    verdict = nondegeneracy_check(roots)
    assert not verdict.passed
    assert verdict.witness[2] == 2
    assert verdict.extra["ratio"]["minpoly"] == [1, 1]


def test_single_root_is_vacuously_nondegenerate():
    verdict = nondegeneracy_check(analyze_roots(char_poly(RecurrenceSpec("pow2", (2,), (1,)))))
    assert verdict.passed


def test_tribonacci_dominant_root(trib):
    roots = analyze_roots(char_poly(trib))
    psi = roots.dominant_root
    assert psi.minpoly == (1, -1, -1, -1)
    assert abs(float(lower(psi.real_enclosure())) - 1.839286755) < 1e-8


def test_rescaled_minimal_polynomial_roots():
    # sympy isolates X^2 - 4X - 4 through X^2 - 2X - 1 scaled by 2
    roots = analyze_roots(Poly(X**2 - 4 * X - 4, X))
    alpha = roots.dominant_root
    assert alpha.minpoly == (1, -4, -4)
    assert abs(float(midpoint(alpha.real_enclosure())) - (2 + 2 * 2**0.5)) < 1e-12
    assert abs(float(midpoint(roots.roots[1].real_enclosure())) - (2 - 2 * 2**0.5)) < 1e-12


@pytest.mark.parametrize(
    "poly",
    [
        X**3 - 8,
        (X - 2) * (X**2 + 4),
        (X + 5) * (X**2 - 6 * X + 25),
    ],
)
def test_real_root_sharing_modulus_with_complex_pair(poly):
    with pytest.raises(NoDominantRoot) as info:
        analyze_roots(Poly(poly, X))
    assert info.value.reason == NoDominantRoot.EQUAL_MODULUS
