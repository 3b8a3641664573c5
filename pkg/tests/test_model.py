from fractions import Fraction
from itertools import permutations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from picod.errors import UsageError
from picod.gf import GF2
from picod.linalg import Matrix
from picod.model import (
    COMPLEMENT,
    CONSECUTIVE,
    OTHER,
    DecentralizedCode,
    ProblemInstance,
    Schedule,
    classify,
    enumerate_users,
    length_from_json,
    length_to_json,
)


def test_enumerate_users_examples():
    users = enumerate_users(ProblemInstance(3, 1, (2,)))
    assert [sorted(u.side_info) for u in users] == [[0, 1], [0, 2], [1, 2]]
    assert len(enumerate_users(ProblemInstance(4, 2, (0, 2)))) == 7
    assert ProblemInstance(5, 1, (1, 2, 3)).n_users == 25


def test_classify_examples():
    assert classify(5, 1, {1, 2}) == (CONSECUTIVE, 1, 2)
    assert classify(6, 2, {0, 4}) == (COMPLEMENT, 1, 3)
    assert classify(5, 1, {0, 2, 4})[0] == OTHER
    with pytest.raises(UsageError):
        classify(3, 1, {0})
    with pytest.raises(UsageError):
        classify(3, 1, {3})


@pytest.mark.parametrize("m,t,S", [(3, 1, ()), (3, 0, (1,)), (3, 4, (0,)), (0, 1, (0,)), (4, 1, (0,))])
def test_invalid_instances(m, t, S):
    with pytest.raises(UsageError):
        ProblemInstance(m, t, S)


def test_constructors():
    assert ProblemInstance.consecutive(5, 2, 1, 2).S == (1, 2)
    assert ProblemInstance.complement(6, 2, 1, 3).S == (0, 4)
    with pytest.raises(UsageError):
        ProblemInstance.complement(6, 2, 0, 3)
    with pytest.raises(UsageError):
        ProblemInstance.complement(6, 2, 1, 4)


@st.composite
def instances(draw, m_max=6):
    m = draw(st.integers(2, m_max))
    t = draw(st.integers(1, m - 1))
    S = draw(st.sets(st.integers(0, m - t), min_size=1))
    if S == {0}:
        S = {m - t}
    return ProblemInstance(m, t, tuple(S))


@given(instances())
def test_users_unique_and_sized(inst):
    users = inst.users
    sets = [u.side_info for u in users]
    assert len(set(sets)) == len(sets) == sum(comb(inst.m, s) for s in inst.S)
    assert all(len(A) in inst.S and A <= set(range(inst.m)) for A in sets)
    assert [u.id for u in users] == list(range(len(users)))
    keys = [(len(A), sorted(A)) for A in sets]
    assert keys == sorted(keys)


@given(instances())
def test_instance_json_round_trip(inst):
    assert ProblemInstance.from_json(inst.to_json()) == inst


def test_instance_json_kind_mismatch():
    d = ProblemInstance(4, 1, (1, 2)).to_json()
    d["kind"] = COMPLEMENT
    with pytest.raises(UsageError):
        ProblemInstance.from_json(d)


@pytest.mark.parametrize("m", range(2, 6))
def test_top_layer_users_are_exchangeable(m):
    for t in range(1, m):
        users = ProblemInstance(m, t, (m - t,)).users
        for a in users:
            for b in users:
                assert any({p[j] for j in a.side_info} == b.side_info for p in permutations(range(m)))


def test_lengths_are_exact():
    assert length_to_json(Fraction(6, 4)) == {"num": 3, "den": 2}
    assert length_from_json({"num": 12, "den": 5}) == Fraction(12, 5)


def test_code_shape_checks():
    inst = ProblemInstance(3, 1, (2,))
    G = Matrix.from_rows([[1, 1, 0]], GF2)
    code = DecentralizedCode(inst, 1, G, Schedule((0,)), GF2)
    assert code.length == 1 and code.row_messages(0) == {0, 1}
    with pytest.raises(UsageError):
        DecentralizedCode(inst, 2, G, Schedule((0,)), GF2)
    with pytest.raises(UsageError):
        DecentralizedCode(inst, 1, G, Schedule((0, 1)), GF2)
    with pytest.raises(UsageError):
        DecentralizedCode(inst, 1, G, Schedule((5,)), GF2)
    with pytest.raises(UsageError):
        Schedule((0,), "psychic")
