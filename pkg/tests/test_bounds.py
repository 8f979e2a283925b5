import itertools
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dediprog.bounds import (
    LAMBDA_STEP,
    BoundVector,
    PreemptJob,
    compute_bounds,
    hungarian,
    lbc,
    lbtc,
    lbtc_side,
    lbtt,
    lbtt_optimize,
    srpt_completions,
)
from dediprog.model import Instance, Proc, Task
from dediprog.oracle import exact_front

from .strategies import instances, random_instance

# Processor-1 side of the seven-task worked example with mono tasks split in halves.
SPLIT_P1 = [(2, 3), (5, 3), (4, 1), (5, 1), (1, 2), (0, 4), (4, 4)]


def jobs_of(pairs):
    return [PreemptJob(i, r, p) for i, (r, p) in enumerate(pairs)]


def preemptive_min_total_completion(pairs):
    """Unit-slot dynamic program over remaining times; integer data only."""
    zero = sum(r for r, p in pairs if p == 0)
    pairs = [(r, p) for r, p in pairs if p > 0]
    releases = tuple(r for r, _ in pairs)

    @lru_cache(maxsize=None)
    def best(t, rem):
        if not any(rem):
            return 0
        ready = [i for i, x in enumerate(rem) if x and releases[i] <= t]
        if not ready:
            nxt = min(releases[i] for i, x in enumerate(rem) if x)
            return best(nxt, rem)
        out = None
        for i in ready:
            nr = list(rem)
            nr[i] -= 1
            cost = (t + 1 if nr[i] == 0 else 0) + best(t + 1, tuple(nr))
            out = cost if out is None else min(out, cost)
        return out

    return zero + best(0, tuple(p for _, p in pairs))


def nonpreemptive_sorted_completions(pairs, order):
    t, out = 0, []
    for i in order:
        r, p = pairs[i]
        t = max(t, r) + p
        out.append(t)
    return sorted(out)


def test_srpt_split_worked_example():
    assert srpt_completions(jobs_of(SPLIT_P1)) == [3, 5, 6, 8, 11, 14, 18]


@pytest.mark.parametrize(
    "pairs,expected",
    [
        ([(2, 6)], [8]),
        ([(0, 5), (1, 1)], [2, 6]),
        ([(0, 2), (0, 2)], [2, 4]),
        ([(0, 3), (1, 2)], [3, 5]),  # equal remaining time: no preemption
        ([(5, 1), (0, 1)], [1, 6]),
        ([(0, 0), (0, 3)], [0, 3]),
    ],
)
def test_srpt_examples(pairs, expected):
    assert srpt_completions(jobs_of(pairs)) == expected


def test_srpt_rational_times():
    jobs = [PreemptJob("a", Fraction(1, 2), Fraction(3, 2)), PreemptJob("b", 0, Fraction(1, 4))]
    assert srpt_completions(jobs) == [Fraction(1, 4), Fraction(2)]


def test_srpt_rejects_empty_and_bad_jobs():
    with pytest.raises(ValueError):
        srpt_completions([])
    with pytest.raises(ValueError):
        PreemptJob(1, 0, -1)
    with pytest.raises(ValueError):
        PreemptJob(1, 0, 1, weight=Fraction(3, 2))


@settings(max_examples=150, deadline=None)
@given(
    pairs=st.lists(st.tuples(st.integers(0, 6), st.integers(0, 4)), min_size=1, max_size=4)
)
def test_srpt_optimal_for_preemptive_total_completion(pairs):
    assert sum(srpt_completions(jobs_of(pairs))) == preemptive_min_total_completion(pairs)


@settings(max_examples=150, deadline=None)
@given(
    pairs=st.lists(st.tuples(st.integers(0, 8), st.integers(0, 5)), min_size=1, max_size=6)
)
def test_srpt_kth_completion_bounds_every_sequence(pairs):
    srpt = srpt_completions(jobs_of(pairs))
    assert srpt == sorted(srpt)
    for order in itertools.permutations(range(len(pairs))):
        seq = nonpreemptive_sorted_completions(pairs, order)
        assert all(a <= b for a, b in zip(srpt, seq))


def test_hungarian_small():
    assert hungarian([[1, 2], [3, 1]]) == ([0, 1], 2)
    assert hungarian([]) == ([], 0)
    assert hungarian([[Fraction(7, 3)]]) == ([0], Fraction(7, 3))
    with pytest.raises(ValueError):
        hungarian([[1, 2]])


def test_hungarian_against_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(200):
        m = int(rng.integers(1, 7))
        costs = [[Fraction(int(rng.integers(0, 30)), int(rng.integers(1, 5))) for _ in range(m)]
                 for _ in range(m)]
        assignment, total = hungarian(costs)
        assert sorted(assignment) == list(range(m))
        assert total == sum(costs[i][assignment[i]] for i in range(m))
        brute = min(sum(costs[i][p[i]] for i in range(m)) for p in itertools.permutations(range(m)))
        assert total == brute


def test_lbc_table1(table1):
    assert lbc(table1) == 18


def test_lbc_single_task():
    assert lbc(Instance((Task(1, Proc.P2, 4, 3, 9),))) == 7


def test_lbtc_table1(table1):
    assert lbtc_side(table1, 1) == Fraction(73, 2)
    assert lbtc_side(table1, 2) == Fraction(49, 2)
    assert lbtc(table1) == 61


@pytest.mark.parametrize(
    "task,expected",
    [
        (Task(1, Proc.BOTH, 0, 4, 9), 4),
        (Task(1, Proc.P1, 0, 4, 9), 4),
        (Task(1, Proc.P2, 3, 5, 9), 8),
    ],
)
def test_lbtc_single_task_is_tight(task, expected):
    assert lbtc(Instance((task,))) == expected


def test_lbtt_examples():
    both = Instance((Task(1, Proc.BOTH, 0, 5, 3),))
    assert lbtt(both, {1: Fraction(1, 2)}).value == 2
    two = Instance((Task(1, Proc.P1, 0, 2, 2), Task(2, Proc.P1, 0, 3, 3)))
    assert lbtt(two, {}).value == 2


def test_lbtt_zero_with_loose_due_dates(table1):
    assert lbtt(table1, {3: Fraction(1, 2)}).value == 0
    assert lbtt_optimize(table1) == 0


def test_lbtt_lambda_checked(table1):
    with pytest.raises(ValueError):
        lbtt(table1, {3: Fraction(3, 2)})
    with pytest.raises(ValueError):
        lbtt(table1, {})


def test_lbtt_optimize_returns_max_of_history():
    rng = random.Random(3)
    for _ in range(30):
        inst = random_instance(rng, rng.randint(2, 7))
        history = []
        best = lbtt_optimize(inst, history=history)
        half = {t.id: Fraction(1, 2) for t in inst.of(Proc.BOTH)}
        assert history[0] == lbtt(inst, half).value
        assert best == max(history) >= history[0]
        assert len(history) <= 1 + len(half)


def test_bound_values_are_quarter_integral():
    rng = random.Random(4)
    for _ in range(60):
        b = compute_bounds(random_instance(rng, rng.randint(1, 7)))
        assert isinstance(b, BoundVector)
        assert (4 * b.lbtc).denominator == 1
        assert (b.lbtt / LAMBDA_STEP).denominator == 1


@settings(max_examples=120, deadline=None)
@given(inst=instances(max_nb=6), lam_k=st.integers(0, 4))
def test_bounds_never_exceed_exact_minima(inst, lam_k):
    res = exact_front(inst)
    b = compute_bounds(inst)
    assert b.lbc <= res.min_cmax
    assert b.lbtc <= res.min_tc
    assert b.lbtt <= res.min_tt
    lam = {t.id: Fraction(lam_k, 4) for t in inst.of(Proc.BOTH)}
    assert lbtt(inst, lam).value <= res.min_tt
