from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picod.construct import (
    ZeroPattern,
    build_zero_pattern,
    check_mds_condition,
    default_field,
    sample_sparse_mds,
    scheme_complement,
    scheme_sparse_mds,
    scheme_split_vector,
    scheme_uncoded,
    split_parameters,
    synthesize,
)
from picod.errors import ConstructionError, UsageError
from picod.gf import FieldSpec
from picod.linalg import column_submatrix, rank
from picod.model import SEQUENTIAL, STATIC, ProblemInstance
from picod.theorems import decentralized_optimum
from picod.verify import validate


def ones_sets(Z):
    return [set(Z.ones(i)) for i in range(Z.rows)]


def test_zero_pattern_examples():
    Z = build_zero_pattern(4, 2, 1, 2)
    assert (Z.rows, Z.cols) == (3, 4)
    assert ones_sets(Z) == [{0, 1}, {3, 0}, {2, 3}]
    assert all(len(Z.zeros(i)) == 2 for i in range(3))
    Z = build_zero_pattern(5, 2, 1, 3)
    assert (Z.rows, Z.cols) == (4, 5)
    assert ones_sets(Z) == [{(j - i) % 5 for j in range(3)} for i in range(4)]
    with pytest.raises(UsageError):
        build_zero_pattern(4, 1, 0, 1)  # m - smin is not below smax + t
    with pytest.raises(UsageError):
        build_zero_pattern(4, 2, 2, 2)  # t = m - smin


def test_zero_rows_distinct_in_regime():
    for m in range(2, 9):
        for t in range(1, 4):
            for lo in range(0, m - t + 1):
                for hi in range(lo, m - t + 1):
                    if t < m - lo < hi + t:
                        Z = build_zero_pattern(m, t, lo, hi)
                        zs = [Z.zeros(i) for i in range(Z.rows)]
                        assert len(set(zs)) == len(zs)
                        assert all(len(Z.ones(i)) == hi for i in range(Z.rows))
                        assert check_mds_condition(Z, m - lo)[0]


def test_mds_condition_examples():
    assert check_mds_condition(build_zero_pattern(4, 2, 1, 2), 3) == (True, None)
    assert check_mds_condition(ZeroPattern.from_rows([[1] * 4] * 3), 3)[0]
    ok, P = check_mds_condition(ZeroPattern.from_rows([[0, 0, 1], [0, 0, 1]]), 2)
    assert not ok and P == (0,)
    ok, P = check_mds_condition(ZeroPattern.from_rows([[0, 1, 1], [0, 1, 1]]), 2)
    assert not ok and P == (0, 1)


def test_sample_sparse_mds_example():
    Z = build_zero_pattern(4, 2, 1, 2)
    C = sample_sparse_mds(Z, 3, FieldSpec(3), seed=1)
    for i in range(3):
        assert {j for j in range(4) if C[i, j]} == Z.ones(i)
    for cs in combinations(range(4), 3):
        assert rank(column_submatrix(C, cs)) == 3
    one = sample_sparse_mds(ZeroPattern.from_rows([[1]]), 1, FieldSpec(1))
    assert one.to_rows() == [[1]]


def test_sample_sparse_mds_guards():
    Z = build_zero_pattern(4, 2, 1, 2)
    with pytest.raises(UsageError):
        sample_sparse_mds(Z, 3, FieldSpec(1))
    with pytest.raises(UsageError):
        sample_sparse_mds(ZeroPattern.from_rows([[0, 0, 1], [0, 0, 1]]), 2, FieldSpec(4))


def test_c2_every_column_count():
    inst = ProblemInstance.consecutive(6, 2, 1, 4)
    code = scheme_sparse_mds(inst, seed=3)
    ell, width = 5, 6
    C = code.generator
    for p in range(2, ell + 1):
        for cs in combinations(range(width), p):
            assert rank(column_submatrix(C, cs)) == p


def test_uncoded_examples():
    code = scheme_uncoded(ProblemInstance.consecutive(5, 1, 1, 2))
    assert code.generator.to_rows() == [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]
    users = code.instance.users
    assert [sorted(users[u].side_info) for u in code.schedule.transmitters] == [[0], [1], [2]]
    code = scheme_uncoded(ProblemInstance.consecutive(6, 2, 0, 2))
    assert code.length == 4
    assert all(len(code.instance.users[u].side_info) >= 1 for u in code.schedule.transmitters)
    assert validate(code).valid
    with pytest.raises(UsageError):
        scheme_uncoded(ProblemInstance.consecutive(4, 2, 1, 2))


def test_sparse_mds_examples():
    code = scheme_sparse_mds(ProblemInstance.consecutive(4, 2, 1, 2), FieldSpec(3))
    assert (code.generator.rows, code.generator.cols) == (3, 4)
    assert validate(code).valid
    code = scheme_sparse_mds(ProblemInstance.consecutive(5, 2, 1, 3))
    assert code.length == 4 and validate(code).valid
    for r, u in code.schedule.rows:
        assert code.row_messages(r) == code.instance.users[u].side_info
    with pytest.raises(UsageError):
        scheme_sparse_mds(ProblemInstance.consecutive(4, 2, 2, 2))


def test_split_examples():
    assert split_parameters(3, 1) == (3, 2, 1)
    assert split_parameters(4, 2) == (6, 5, 2)
    assert split_parameters(2, 1) == (2, 1, 1)
    for m, t, length in [(3, 1, Fraction(3, 2)), (4, 2, Fraction(12, 5)), (2, 1, Fraction(2))]:
        code = scheme_split_vector(ProblemInstance(m, t, (m - t,)))
        assert code.length == length and validate(code).valid
    with pytest.raises(UsageError):
        scheme_split_vector(ProblemInstance(4, 1, (2,)))


def test_split_over_gf2_exhausts_budget():
    with pytest.raises(ConstructionError) as exc:
        scheme_split_vector(ProblemInstance(3, 1, (2,)), FieldSpec(1), budget=5)
    assert exc.value.attempts == 5


def test_retry_budget_env(monkeypatch):
    monkeypatch.setenv("PICOD_RETRY_BUDGET", "3")
    with pytest.raises(ConstructionError) as exc:
        scheme_split_vector(ProblemInstance(3, 1, (2,)), FieldSpec(1))
    assert exc.value.attempts == 3
    monkeypatch.setenv("PICOD_RETRY_BUDGET", "zero")
    with pytest.raises(UsageError):
        scheme_split_vector(ProblemInstance(3, 1, (2,)), FieldSpec(1))


def test_complement_examples():
    code = scheme_complement(ProblemInstance.complement(6, 2, 1, 3))
    assert code.scheme == "two_step" and code.knowledge_mode == SEQUENTIAL
    assert code.length == 4 and validate(code).valid
    # step 2 rows are dense and sent by the smallest qualifying user
    users = code.instance.users
    sender = users[code.schedule.transmitters[2]]
    assert sender.side_info == {2, 3, 4, 5}
    assert all(x for r in code.generator.to_rows()[2:] for x in r)
    code = scheme_complement(ProblemInstance.complement(7, 2, 2, 3))
    assert code.scheme == "concatenated" and code.knowledge_mode == STATIC
    assert code.length == 6 and validate(code).valid
    code = scheme_complement(ProblemInstance.complement(5, 2, 1, 1))
    assert code.scheme == "uncoded_all" and code.length == 5
    with pytest.raises(UsageError):
        scheme_complement(ProblemInstance(4, 1, (1, 2)))


def test_two_step_needs_sequential_knowledge():
    code = scheme_complement(ProblemInstance.complement(6, 2, 1, 3))
    from picod.model import DecentralizedCode, Schedule

    static = DecentralizedCode(code.instance, 1, code.generator,
                               Schedule(code.schedule.transmitters, STATIC), code.field)
    assert not validate(static).schedule_ok


def test_default_field():
    assert default_field(ProblemInstance.consecutive(4, 2, 1, 2)).size == 8  # bound 6
    assert default_field(ProblemInstance.consecutive(5, 1, 1, 2)).size == 8  # bound 6
    assert default_field(ProblemInstance(3, 1, (2,))).size == 4


@st.composite
def in_scope(draw):
    m = draw(st.integers(2, 7))
    t = draw(st.integers(1, min(3, m - 1)))
    if draw(st.booleans()) and m - t >= 2:
        lo = draw(st.integers(1, m - t - 1))
        hi = draw(st.integers(lo, m - t - 1))
        return ProblemInstance.complement(m, t, lo, hi)
    lo = draw(st.integers(0, m - t))
    hi = draw(st.integers(max(lo, 1), m - t))
    return ProblemInstance.consecutive(m, t, lo, hi)


@settings(max_examples=60, deadline=None)
@given(in_scope(), st.integers(0, 10**6))
def test_synthesized_codes_are_valid_and_optimal(inst, seed):
    code = synthesize(inst, seed=seed)
    report = validate(code)
    assert report.valid
    assert code.length == decentralized_optimum(inst).value
    assert synthesize(inst, seed=seed) == code


def test_synthesize_rejects_other():
    with pytest.raises(UsageError):
        synthesize(ProblemInstance(5, 1, (0, 2, 4)))
