import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, reject, settings
from hypothesis import strategies as st
from mpmath import iv

from scripts.common.errors import HypothesisFailure, PillaiError
from scripts.common.intervals import certainly_le, contains_integer, to_interval, upper, working_precision
from scripts.recurrence.binet import binet_coefficients, evaluate_binet
from scripts.recurrence.growth import (
    analyze_sequence,
    coefficient_threshold,
    envelope_constants,
    growth_constants,
    monotonicity_threshold,
)
from scripts.recurrence.recurrence_core import RecurrenceSpec, char_poly, terms
from scripts.recurrence.roots import analyze_roots

GOLDEN = (1 + math.sqrt(5)) / 2


def _envelope(spec):
    roots = analyze_roots(char_poly(spec))
    return envelope_constants(roots, binet_coefficients(spec, roots))


def test_fibonacci_envelope(fib):
    env = _envelope(fib)
    assert env.degree == 0
    assert env.coefficient_sum >= Fraction(1) / Fraction(math.sqrt(5)) - Fraction(1, 10**12)
    assert abs(float(env.alpha_prime) - math.sqrt(GOLDEN)) < 1e-3
    assert 1 < env.alpha_prime < GOLDEN
    assert env.coefficient_sum <= env.scale <= env.coefficient_sum + Fraction(1, 10**15)


def test_single_root_envelope():
    env = _envelope(RecurrenceSpec("pow2", (2,), (1,)))
    assert (env.degree, env.coefficient_sum, env.scale) == (0, 0, 0)
    assert abs(float(env.alpha_prime) - math.sqrt(2)) < 1e-3


def test_two_rational_roots_envelope():
    # U_n = 3^n + 5 * 2^n
    env = _envelope(RecurrenceSpec("three_two", (5, -6), (6, 13)))
    assert env.degree == 0
    assert 5 <= env.coefficient_sum < Fraction(50001, 10000)
    assert abs(float(env.alpha_prime) - math.sqrt(6)) < 1e-3
    assert env.coefficient_sum <= env.scale <= env.coefficient_sum + Fraction(1, 10**15)


def test_growth_constants_for_fibonacci(fib):
    roots = analyze_roots(char_poly(fib))
    coefficients = binet_coefficients(fib, roots)
    growth = growth_constants(fib, roots, coefficients, envelope_constants(roots, coefficients), check_ceiling=60)
    assert 0 < growth.lower < growth.upper < growth.lower * Fraction(GOLDEN)
    assert growth.gap_upper >= growth.upper * (1 + 1 / Fraction(GOLDEN)) - Fraction(1, 10**12)
    assert 0 < growth.gap_lower <= growth.lower - growth.upper / Fraction(GOLDEN) + Fraction(1, 10**12)


def test_fibonacci_analysis(fib_analysis):
    growth = fib_analysis.growth
    assert fib_analysis.sigma == 0
    assert fib_analysis.monotone_from == 2
    assert fib_analysis.coefficient_from == 1
    assert growth.start <= 5
    assert growth.lower < Fraction(4472, 10**4) < growth.upper
    assert growth.upper / growth.lower < Fraction(GOLDEN)
    assert growth.gap_lower > 0


def test_rescaled_root_analysis():
    # U_n = 4 U_{n-1} + 4 U_{n-2}, roots 2 +- 2 sqrt(2)
    analysis = analyze_sequence(RecurrenceSpec("pell_scaled", (4, 4), (0, 1)))
    assert analysis.sigma == 0
    lo, hi = analysis.to_dict()["dominant_root"]
    assert float(lo) <= 2 + 2 * math.sqrt(2) <= float(hi)
    assert analysis.growth.lower < Fraction(1) / Fraction(4 * math.sqrt(2)) < analysis.growth.upper


def test_tribonacci_analysis(trib_analysis):
    assert trib_analysis.sigma == 0
    assert trib_analysis.monotone_from == 2
    assert trib_analysis.growth.start <= 10
    assert trib_analysis.growth.lower < Fraction(3362, 10**4) < trib_analysis.growth.upper


def test_power_of_two_sandwich(pow2_analysis):
    growth = pow2_analysis.growth
    assert Fraction(98, 100) <= growth.lower <= 1 <= growth.upper <= Fraction(102, 100)
    assert growth.gap_lower > 0
    assert growth.gap_upper >= Fraction(3, 2)


def test_growth_sandwich_holds_to_ceiling(trib, trib_analysis):
    growth = trib_analysis.growth
    values = terms(trib, 300)
    with working_precision(trib_analysis.precision_bits):
        modulus = trib_analysis.modulus()
        for n in range(growth.start, 301):
            assert certainly_le(to_interval(growth.lower) * modulus**n, values[n])
            assert certainly_le(values[n], to_interval(growth.upper) * modulus**n)


def test_alternating_sequence_has_no_monotonicity_threshold():
    with pytest.raises(HypothesisFailure, match="monotonicity threshold not found"):
        monotonicity_threshold(RecurrenceSpec("alternating", (-1,), (3,)))


def test_alternating_sequence_fails_analysis():
    with pytest.raises(HypothesisFailure) as info:
        analyze_sequence(RecurrenceSpec("alternating", (-1,), (3,)))
    assert info.value.stage == "monotonicity"


@pytest.mark.parametrize(
    "coefficients, expected",
    [
        ((Fraction(1, 3),), 1),
        ((-10, 1), 21),
        ((0, 1), 1),
    ],
)
def test_coefficient_threshold(coefficients, expected):
    assert coefficient_threshold(coefficients) == expected


def test_analysis_report_keys(fib_analysis):
    report = fib_analysis.to_dict()
    lo, hi = report["dominant_root"]
    assert float(lo) <= 1.618034 <= float(hi)
    for key in ("A", "a_double_prime", "alpha_prime", "a_prime", "C1", "C2", "N0", "N1", "N2", "C5", "C6"):
        assert key in report


def test_negated_analysis(fib_analysis):
    neg = fib_analysis.negated()
    assert neg.label == "-fib"
    assert neg.growth == fib_analysis.growth
    assert neg.leading[0].sign() == -fib_analysis.leading[0].sign()


@settings(suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(
    st.integers(1, 4),
    st.lists(st.integers(-2, 2), min_size=3, max_size=3),
    st.lists(st.integers(-3, 5), min_size=4, max_size=4),
    st.integers(1, 4),
)
def test_random_recurrences_satisfy_their_certificates(lead, rest, initial, order):
    coefficients = ([lead] + rest)[:order]
    if coefficients[-1] == 0 or not any(initial[:order]):
        reject()
    spec = RecurrenceSpec("random", tuple(coefficients), tuple(initial[:order]))
    try:
        analysis = analyze_sequence(spec)
    except PillaiError:
        reject()

    bits = analysis.precision_bits
    values = terms(spec, 300)
    growth = analysis.growth
    with working_precision(bits):
        modulus = analysis.modulus()
        for n, u in enumerate(values):
            assert contains_integer(evaluate_binet(analysis.coefficients, analysis.roots, n, bits), u)
            if n >= growth.start:
                scale = iv.mpf(n) ** analysis.sigma * modulus**n
                assert certainly_le(to_interval(growth.lower) * scale, abs(u))
                assert certainly_le(abs(u), to_interval(growth.upper) * scale)
    envelope = analysis.envelope
    # alpha^300 needs about 300 log2|alpha| bits on top of the base precision
    wide = bits + 300 * math.ceil(math.log2(float(upper(analysis.modulus()))))
    with working_precision(wide):
        alpha = analysis.alpha.enclosure(wide).real
        lead = [c.enclosure(wide).real for c in analysis.leading]
        for n, u in enumerate(values):
            main = sum((c * n**l for l, c in enumerate(lead)), iv.mpf(0)) * alpha**n
            bound = to_interval(envelope.scale) * to_interval(envelope.alpha_prime) ** n
            assert certainly_le(abs(to_interval(u) - main), bound), n
    for n in range(analysis.monotone_from, 300):
        assert abs(values[n + 1]) > abs(values[n]) > 0
