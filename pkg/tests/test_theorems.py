from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from picod.errors import DomainError, UsageError
from picod.model import ProblemInstance
from picod.theorems import (
    EXACT,
    complement_size,
    decentralized_optimum,
    fano_lower_bound,
    lower_bound,
    optimal_length_complement,
    optimal_length_consecutive,
)


def test_consecutive_examples():
    assert optimal_length_consecutive(5, 1, 1, 2) == 3
    assert optimal_length_consecutive(3, 1, 2, 2) == Fraction(3, 2)
    assert optimal_length_consecutive(4, 2, 1, 2) == 3


def test_complement_examples():
    assert optimal_length_complement(6, 2, 1, 3) == 4
    # S = {0, 4}: |S| = 2, so min{5, 2} = 2
    assert complement_size(5, 1, 1, 3) == 2
    assert optimal_length_complement(5, 1, 1, 3) == 2
    # S = {0, 1, 4, 5}: |S| = 4
    assert complement_size(7, 2, 2, 3) == 4
    assert optimal_length_complement(7, 2, 2, 3) == 6


def test_fano_examples():
    assert fano_lower_bound(3, 1, 2) == Fraction(3, 2)
    assert fano_lower_bound(4, 2, 2) == Fraction(12, 5)
    assert fano_lower_bound(2, 1, 1) == 2
    with pytest.raises(DomainError):
        fano_lower_bound(2, 2, 0)
    with pytest.raises(UsageError):
        fano_lower_bound(4, 1, 2)


def test_parameter_errors():
    with pytest.raises(UsageError):
        optimal_length_consecutive(4, 1, 2, 1)
    with pytest.raises(UsageError):
        optimal_length_consecutive(4, 1, 0, 4)
    with pytest.raises(UsageError):
        optimal_length_consecutive(4, 1, 0, 0)
    with pytest.raises(UsageError):
        optimal_length_complement(6, 2, 0, 3)
    with pytest.raises(UsageError):
        optimal_length_complement(6, 0, 1, 2)
    with pytest.raises(UsageError):
        decentralized_optimum(ProblemInstance(5, 1, (0, 2, 4)))
    with pytest.raises(UsageError):
        lower_bound(ProblemInstance(4, 1, (2, 3)))


@st.composite
def params(draw):
    m = draw(st.integers(2, 12))
    t = draw(st.integers(1, m - 1))
    lo = draw(st.integers(0, m - t))
    hi = draw(st.integers(max(lo, 1), m - t))
    return m, t, lo, hi


@given(params())
def test_above_t(p):
    m, t, lo, hi = p
    v = optimal_length_consecutive(m, t, lo, hi)
    assert v > 0 and v >= t
    if lo == hi == m - t:
        assert v > t
        assert v == fano_lower_bound(m, t, m - t)


@given(params())
def test_monotone_in_smax(p):
    m, t, lo, hi = p
    if hi < m - t:
        assert optimal_length_consecutive(m, t, lo, hi) <= optimal_length_consecutive(m, t, lo, hi + 1)


@given(st.integers(2, 12), st.data())
def test_fano_matches_first_case_only(m, data):
    t = data.draw(st.integers(1, m - 1))
    s = m - t
    n = comb(m, s)
    assert fano_lower_bound(m, t, s) == Fraction(t * n, n - 1)
    assert fano_lower_bound(m, t, s) == optimal_length_consecutive(m, t, s, s)


def test_decentralized_optimum_metadata():
    b = decentralized_optimum(ProblemInstance(3, 1, (2,)))
    assert b.kind == EXACT and b.value == Fraction(3, 2) and b.centralized == 1
    assert b.differs_from_centralized and not b.flagged
    b = decentralized_optimum(ProblemInstance(6, 2, (0, 4)))
    assert b.value == b.centralized == 4 and not b.differs_from_centralized


def test_decentralized_differs_only_when_centralized_is_t():
    for m in range(2, 9):
        for t in range(1, m):
            for lo in range(0, m - t + 1):
                for hi in range(max(lo, 1), m - t + 1):
                    b = decentralized_optimum(ProblemInstance.consecutive(m, t, lo, hi))
                    assert b.differs_from_centralized == (b.centralized == t)
                    assert not b.flagged
            for lo in range(1, m - t):
                for hi in range(lo, m - t):
                    b = decentralized_optimum(ProblemInstance.complement(m, t, lo, hi))
                    assert not b.flagged
