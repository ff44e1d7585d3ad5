from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qcoact.ncpoly import Element, Letter
from qcoact.presentations import preset_bl, preset_suq2, preset_vs
from qcoact.scalars import GaussRational, Scalar


def gauss():
    small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.builds(GaussRational, small, small)


def scalars(max_terms=3):
    mono = st.tuples(st.integers(-2, 2), st.integers(-1, 1), st.integers(-1, 1))
    return st.dictionaries(mono, gauss(), max_size=max_terms).map(Scalar)


def words(ngens, max_len=4):
    letter = st.builds(Letter, st.integers(0, ngens - 1), st.booleans())
    return st.lists(letter, max_size=max_len).map(tuple)


def elements(ngens, max_len=4, max_terms=3):
    coeff = st.sampled_from([Scalar.const(1), Scalar.const(-1), Scalar.q(), Scalar.const(Fraction(1, 2)),
                             Scalar.t(), Scalar.q(-1), Scalar.const(GaussRational(0, 1))])
    return st.dictionaries(words(ngens, max_len), coeff, max_size=max_terms).map(
        lambda d: Element(ngens, d))


@pytest.fixture(scope="session")
def suq2():
    return preset_suq2()


@pytest.fixture(scope="session")
def vs3():
    return preset_vs(1)


@pytest.fixture(scope="session")
def vs7():
    return preset_vs(3)


@pytest.fixture(scope="session")
def bl():
    return preset_bl()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for line in RESULTS:
            terminalreporter.write_line(line)
