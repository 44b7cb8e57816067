import json

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Poly

from scripts.common.errors import SpecParseError
from scripts.recurrence.recurrence_core import (
    X,
    RecurrenceSpec,
    char_poly,
    load_spec,
    minimal_spec,
    spec_from_dict,
    term,
    terms,
)


def test_fibonacci_term(fib):
    assert term(fib, 20) == 6765


def test_tribonacci_term(trib):
    assert term(trib, 15) == 3136


def test_term_zero_is_initial(trib):
    assert term(trib, 0) == trib.initial[0]
    assert term(trib, 2) == trib.initial[2]


def test_terms_prefix_matches_term(fib, trib):
    for spec in (fib, trib):
        values = terms(spec, 60)
        assert [term(spec, n) for n in range(61)] == values


def test_char_poly(fib, trib):
    assert char_poly(fib) == Poly(X**2 - X - 1, X)
    assert char_poly(trib) == Poly(X**3 - X**2 - X - 1, X)
    assert char_poly(RecurrenceSpec("three", (3,), (1,))) == Poly(X - 3, X)


@pytest.mark.parametrize(
    "coefficients, initial",
    [
        ((), ()),
        ((1, 0), (1, 1)),
        ((1, 1), (1,)),
        ((2,), (0,)),
    ],
)
def test_invalid_specs_are_rejected(coefficients, initial):
    with pytest.raises(ValueError):
        RecurrenceSpec("bad", coefficients, initial)


def test_negative_index_rejected(fib):
    with pytest.raises(ValueError):
        term(fib, -1)


def test_minimal_spec_drops_cancelled_root():
    doubled = RecurrenceSpec("doubled", (4, -4), (1, 2))
    reduced = minimal_spec(doubled)
    assert reduced.coefficients == (2,)
    assert reduced.initial == (1,)
    assert terms(reduced, 30) == terms(doubled, 30)


def test_minimal_spec_keeps_minimal(fib):
    assert minimal_spec(fib) is fib


@given(
    st.lists(st.integers(-3, 3), min_size=1, max_size=3).filter(lambda c: c[-1] != 0),
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
)
def test_minimal_spec_generates_same_sequence(coefficients, initial):
    initial = initial[: len(coefficients)]
    if not any(initial):
        initial[0] = 1
    spec = RecurrenceSpec("random", tuple(coefficients), tuple(initial))
    reduced = minimal_spec(spec)
    assert reduced.order <= spec.order
    assert terms(reduced, 40) == terms(spec, 40)


def test_negated_spec(fib):
    neg = fib.negated()
    assert neg.label == "-fib"
    assert terms(neg, 10) == [-u for u in terms(fib, 10)]


def test_load_spec_round_trip(tmp_path, fib):
    path = tmp_path / "fib.json"
    path.write_text(json.dumps(fib.to_dict()))
    assert load_spec(path) == fib


def test_load_spec_syntax_error_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "label": "x",\n  "coefficients": [1,\n}')
    with pytest.raises(SpecParseError) as info:
        load_spec(path)
    assert info.value.line == 4
    assert info.value.stage == "parse"


def test_spec_missing_field():
    with pytest.raises(SpecParseError, match="initial"):
        spec_from_dict({"label": "x", "coefficients": [1]})


def test_missing_file_is_os_error(tmp_path):
    with pytest.raises(OSError):
        load_spec(tmp_path / "missing.json")
