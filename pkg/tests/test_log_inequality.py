from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp

from scripts.bounds.log_inequality import exit_bound, least_true, solve_log_inequality

TOL = mp.mpf(10) ** -20


def _mp(q):
    q = Fraction(q)
    return mp.mpf(q.numerator) / q.denominator


def _margin(A, B, p, C, m):
    with mp.workdps(60):
        return _mp(A) * m - (_mp(B) * mp.log(m) ** p + _mp(C))


def test_least_true():
    assert least_true(lambda m: m * m >= 50, 0) == 8
    assert least_true(lambda m: True, 10) == 10
    assert least_true(lambda m: m >= 1000, 3) == 1000


@pytest.mark.parametrize(
    "A, B, p, C, expected",
    [
        (1, 0, 1, 0, 2),
        (1, 1, 1, 0, 2),
        (1, 1, 1, 5, 7),
        (1, 0, 1, 9, 10),
    ],
)
def test_small_cases(A, B, p, C, expected):
    assert solve_log_inequality(A, B, p, C) == expected


def test_quartic_logarithm():
    m_star = solve_log_inequality(1, 1, 4, 0)
    assert 5490 <= m_star <= 5510
    assert _margin(1, 1, 4, 0, m_star - 1) <= TOL
    for m in range(m_star, m_star + 1001):
        assert _margin(1, 1, 4, 0, m) > -TOL


def test_exit_bound_example():
    A = Fraction(1, 10)
    assert exit_bound(A, 5, 1) == 282
    assert _margin(A, 5, 1, 0, 282) <= 0
    assert _margin(A, 5, 1, 0, 283) > 0


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        solve_log_inequality(1, 1, 0, 0)
    with pytest.raises(ValueError):
        solve_log_inequality(0, 1, 1, 0)


@given(
    st.fractions(min_value=Fraction(1, 100), max_value=10, max_denominator=100),
    st.fractions(min_value=0, max_value=50, max_denominator=100),
    st.integers(1, 4),
    st.fractions(min_value=-10, max_value=100, max_denominator=100),
)
def test_threshold_is_exact(A, B, p, C):
    m_star = solve_log_inequality(A, B, p, C)
    assert m_star >= 2
    if B == 0:
        assert A * m_star > C
        if m_star > 2:
            assert A * (m_star - 1) <= C
        return
    if m_star > 2:
        assert _margin(A, B, p, C, m_star - 1) <= TOL
    for m in list(range(m_star, m_star + 50)) + [2 * m_star, 10 * m_star]:
        assert _margin(A, B, p, C, m) > -TOL
