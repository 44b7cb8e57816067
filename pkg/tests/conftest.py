from pathlib import Path

import pytest

from scripts.bounds.bound_chain import derive_all
from scripts.recurrence.growth import analyze_sequence
from scripts.recurrence.recurrence_core import RecurrenceSpec, load_spec

DATASET = Path(__file__).resolve().parent.parent / "dataset"


@pytest.fixture(scope="session")
def dataset():
    return DATASET


@pytest.fixture(scope="session")
def fib():
    return load_spec(DATASET / "fib.json")


@pytest.fixture(scope="session")
def trib():
    return load_spec(DATASET / "trib.json")


@pytest.fixture(scope="session")
def pow2():
    return RecurrenceSpec("pow2", (2,), (1,))


@pytest.fixture(scope="session")
def fib_analysis(fib):
    return analyze_sequence(fib)


@pytest.fixture(scope="session")
def trib_analysis(trib):
    return analyze_sequence(trib)


@pytest.fixture(scope="session")
def pow2_analysis(pow2):
    return analyze_sequence(pow2)


@pytest.fixture(scope="session")
def fib_trib_report(fib_analysis, trib_analysis):
    return derive_all(fib_analysis, trib_analysis)
