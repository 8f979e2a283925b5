import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dediprog.model import (
    Instance,
    InvalidPermutationError,
    ObjectiveVector,
    Proc,
    Schedule,
    Task,
    decode,
    evaluate,
    objectives,
    validate,
)

from .strategies import instances


def reference_completions(instance, perm):
    """Independent decoder: each task starts after every earlier task sharing a processor."""
    placed = []
    out = {}
    for j in perm:
        t = instance.task(j)
        start = t.r
        for k in placed:
            u = instance.task(k)
            shares = (t.proc.uses_p1 and u.proc.uses_p1) or (t.proc.uses_p2 and u.proc.uses_p2)
            if shares and u.p > 0:
                start = max(start, out[k])
        out[j] = start + t.p
        placed.append(j)
    return out


@pytest.fixture
def abc():
    return Instance((
        Task(1, Proc.P1, 0, 2, 2),
        Task(2, Proc.BOTH, 0, 3, 6),
        Task(3, Proc.P2, 1, 1, 3),
    ))


def test_single_task_is_forced():
    inst = Instance((Task(1, Proc.P1, 5, 3, 6),))
    sched = decode(inst, [1])
    assert sched.start == {1: 5} and sched.completion == {1: 8}
    assert evaluate(inst, sched) == (8, 2, 8)


def test_abc_decode_and_objectives(abc):
    sched = decode(abc, [1, 2, 3])
    assert sched.completion == {1: 2, 2: 5, 3: 6}
    assert sched.completion == reference_completions(abc, [1, 2, 3])
    assert evaluate(abc, sched) == ObjectiveVector(6, 3, 13)


def test_abc_every_permutation_matches_reference(abc):
    for perm in itertools.permutations(abc.ids()):
        assert decode(abc, perm).completion == reference_completions(abc, perm)


def test_table1_decode(table1):
    perm = [4, 3, 7, 6, 1, 2, 5]
    sched = decode(table1, perm)
    assert sched.completion == {4: 8, 3: 10, 7: 12, 6: 18, 1: 16, 2: 18, 5: 20}
    assert validate(table1, sched)


def test_loose_due_dates_give_zero_tardiness(table1):
    for perm in [table1.ids(), tuple(reversed(table1.ids()))]:
        assert objectives(table1, perm).total_tardiness == 0


@pytest.mark.parametrize("perm", [[1, 2], [1, 1, 2], [1, 2, 2], [0, 1, 2], [1, 2, 4]])
def test_invalid_permutation_rejected(abc, perm):
    with pytest.raises(InvalidPermutationError):
        decode(abc, perm)


def test_zero_length_task_does_not_advance_availability():
    inst = Instance((Task(1, Proc.P1, 10, 0, 20), Task(2, Proc.P1, 0, 4, 20)))
    sched = decode(inst, [1, 2])
    assert sched.completion == {1: 10, 2: 4}
    assert validate(inst, sched)


def test_validate_detects_p1_overlap():
    inst = Instance((Task(1, Proc.P1, 0, 2, 9), Task(2, Proc.P1, 0, 3, 9)))
    assert not validate(inst, Schedule({1: 0, 2: 0}, {1: 2, 2: 3}))


def test_validate_detects_both_task_overlapping_p2(abc):
    assert not validate(abc, Schedule({1: 0, 2: 2, 3: 3}, {1: 2, 2: 5, 3: 4}))


def test_validate_detects_release_and_duration_violations(abc):
    assert not validate(abc, Schedule({1: 0, 2: 2, 3: 0}, {1: 2, 2: 5, 3: 1}))
    assert not validate(abc, Schedule({1: 0, 2: 2, 3: 5}, {1: 2, 2: 5, 3: 7}))


def test_instance_rejects_bad_ids():
    with pytest.raises(ValueError):
        Instance((Task(1, Proc.P1, 0, 1, 1), Task(3, Proc.P1, 0, 1, 1)))
    with pytest.raises(ValueError):
        Instance(())


@settings(max_examples=200, deadline=None)
@given(inst=instances(), data=st.data())
def test_decode_feasible_deterministic_and_fast_path_agrees(inst, data):
    perm = data.draw(st.permutations(list(inst.ids())))
    sched = decode(inst, perm)
    assert validate(inst, sched)
    assert decode(inst, perm) == sched
    assert sched.completion == reference_completions(inst, perm)
    vec = evaluate(inst, sched)
    assert objectives(inst, perm) == vec
    assert vec.cmax >= max(t.r + t.p for t in inst.tasks)
    assert min(vec) >= 0


@settings(max_examples=100, deadline=None)
@given(inst=instances(), data=st.data())
def test_objectives_monotone_in_completion_times(inst, data):
    perm = data.draw(st.permutations(list(inst.ids())))
    sched = decode(inst, perm)
    j = data.draw(st.sampled_from(list(inst.ids())))
    delay = data.draw(st.integers(1, 10))
    later = dict(sched.completion)
    later[j] += delay
    before = evaluate(inst, sched)
    after = evaluate(inst, Schedule(sched.start, later))
    assert all(a >= b for a, b in zip(after, before))
