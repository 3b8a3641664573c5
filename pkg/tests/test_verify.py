import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picod.construct import scheme_split_vector, scheme_uncoded, synthesize
from picod.gf import FieldSpec, GF2
from picod.linalg import Matrix
from picod.model import DecentralizedCode, ProblemInstance, Schedule, SEQUENTIAL
from picod.oracle import brute_force_decodable
from picod.verify import VerificationReport, decodable_messages, validate


def test_uncoded_user_decodes_sent_messages():
    code = scheme_uncoded(ProblemInstance.consecutive(5, 1, 1, 2))
    user = next(u for u in code.instance.users if u.side_info == {3, 4})
    assert decodable_messages(code, user) == {0, 1, 2}


def test_split_code_each_user_gets_its_missing_message():
    code = scheme_split_vector(ProblemInstance(3, 1, (2,)))
    for u in code.instance.users:
        assert decodable_messages(code, u) == set(range(3)) - u.side_info


def test_zero_row_code():
    inst = ProblemInstance(3, 1, (1, 2))
    code = DecentralizedCode(inst, 1, Matrix.zeros(0, 3, GF2), Schedule(()), GF2)
    report = validate(code)
    assert all(not r.decodable for r in report.per_user)
    assert not report.valid and report.schedule_ok


def test_reassigned_transmitter_is_a_violation():
    code = scheme_uncoded(ProblemInstance.consecutive(5, 1, 1, 2))
    bad_user = next(u.id for u in code.instance.users if 0 not in u.side_info)
    tx = (bad_user,) + code.schedule.transmitters[1:]
    bad = DecentralizedCode(code.instance, 1, code.generator, Schedule(tx), code.field)
    report = validate(bad)
    assert not report.schedule_ok and not report.valid
    assert report.violations[0].row == 0 and report.violations[0].missing == (0,)


def test_too_few_rows():
    inst = ProblemInstance(4, 2, (1, 2))
    code = synthesize(inst)
    short = DecentralizedCode(inst, 1, code.generator.row_submatrix(range(1)),
                              Schedule(code.schedule.transmitters[:1]), code.field)
    assert validate(short).unsatisfied


def test_report_invariants_and_json():
    code = synthesize(ProblemInstance.complement(6, 2, 1, 3))
    report = validate(code)
    t = code.instance.t
    for r in report.per_user:
        A = code.instance.users[r.user].side_info
        assert len(r.desired) == t and set(r.desired) <= r.decodable
        assert not set(r.desired) & A
        assert list(r.desired) == sorted(r.decodable)[:t]
    assert VerificationReport.from_json(report.to_json()) == report
    assert validate(code) == report


def test_sequential_prefix_decoding():
    code = synthesize(ProblemInstance.complement(6, 2, 1, 3))
    assert code.knowledge_mode == SEQUENTIAL
    sender = code.instance.users[code.schedule.transmitters[-1]]
    assert decodable_messages(code, sender, upto=0) == set()
    assert decodable_messages(code, sender, upto=2) == set(range(6)) - sender.side_info


@st.composite
def random_codes(draw, m_max=5):
    m = draw(st.integers(2, m_max))
    t = draw(st.integers(1, m - 1))
    S = draw(st.sets(st.integers(1, m - t), min_size=1))
    f = draw(st.sampled_from([FieldSpec(1), FieldSpec(2)]))
    beta = draw(st.integers(1, 2))
    n_rows = draw(st.integers(0, 6))
    cols = m * beta
    rows = draw(st.lists(st.lists(st.integers(0, f.size - 1), min_size=cols, max_size=cols),
                         min_size=n_rows, max_size=n_rows))
    inst = ProblemInstance(m, t, tuple(S))
    return DecentralizedCode(inst, beta, Matrix.from_rows(rows, f, cols), Schedule((0,) * n_rows), f)


@settings(max_examples=100, deadline=None)
@given(random_codes(), st.data())
def test_appending_rows_never_shrinks(code, data):
    cols = code.generator.cols
    extra = data.draw(st.lists(st.integers(0, code.field.size - 1), min_size=cols, max_size=cols))
    bigger = DecentralizedCode(code.instance, code.beta,
                               code.generator.vstack(Matrix.from_rows([extra], code.field, cols)),
                               Schedule(code.schedule.transmitters + (0,)), code.field)
    for u in code.instance.users:
        assert decodable_messages(code, u) <= decodable_messages(bigger, u)


def test_matches_brute_force_decoder():
    rng = random.Random(11)
    for _ in range(150):
        m = rng.randint(2, 4)
        inst = ProblemInstance(m, 1, (rng.randint(1, m - 1),))
        rows = [[rng.randint(0, 1) for _ in range(m)] for _ in range(rng.randint(0, 4))]
        code = DecentralizedCode(inst, 1, Matrix.from_rows(rows, GF2, m), Schedule((0,) * len(rows)), GF2)
        for u in inst.users:
            assert decodable_messages(code, u) == brute_force_decodable(rows, u.side_info, m)


def test_brute_force_decoder_examples():
    assert brute_force_decodable([[1, 0, 0]], set(), 3) == {0}
    assert brute_force_decodable([[1, 1, 0]], {1}, 3) == {0}
    assert brute_force_decodable([[1, 1, 0]], set(), 3) == set()
    assert brute_force_decodable([], {0}, 2) == set()


def test_validate_does_not_mutate():
    code = synthesize(ProblemInstance(4, 2, (2,)))
    before = code.generator.to_rows()
    validate(code)
    assert code.generator.to_rows() == before
