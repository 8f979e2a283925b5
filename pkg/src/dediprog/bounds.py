"""Lower bounds on makespan (LBC), total completion (LBTC) and total tardiness (LBTT).

All three relax the two-processor problem into one single-machine problem per
processor, with bi-processor tasks appearing on both sides. Arithmetic is
exact: integers where possible, ``Fraction`` otherwise.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .model import Instance, Proc, Task

LAMBDA_STEP = Fraction(1, 4)


@dataclass(frozen=True)
class PreemptJob:
    id: Hashable
    r: Rational
    p: Rational
    weight: Rational = 1

    def __post_init__(self) -> None:
        if self.p < 0:
            raise ValueError(f"job {self.id}: negative processing time")
        if not 0 <= self.weight <= 1:
            raise ValueError(f"job {self.id}: weight {self.weight} outside [0, 1]")


@dataclass(frozen=True)
class BoundVector:
    lbc: int
    lbtt: Fraction
    lbtc: Fraction

    def as_point(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (Fraction(self.lbc), self.lbtt, self.lbtc)


def srpt_completions(jobs: Sequence[PreemptJob]) -> List[Rational]:
    """Completion times of preemptive SRPT on one machine, sorted ascending.

    The running job is preempted only when an arriving job is strictly
    shorter than its remaining time; among equal remaining times the
    smaller id runs. The i-th value never exceeds the i-th smallest
    completion time of any feasible schedule of the same jobs.
    """
    if not jobs:
        raise ValueError("srpt_completions needs at least one job")
    order = sorted(jobs, key=lambda j: (j.r, j.id))
    n = len(order)
    waiting: List[Tuple[Rational, Hashable]] = []
    running: Optional[Tuple[Rational, Hashable]] = None
    completions: List[Rational] = []
    t: Rational = 0
    i = 0
    while i < n or waiting or running is not None:
        if running is None and not waiting:
            t = max(t, order[i].r)
        while i < n and order[i].r <= t:
            heapq.heappush(waiting, (order[i].p, order[i].id))
            i += 1
        if running is None:
            running = heapq.heappop(waiting)
        elif waiting and waiting[0][0] < running[0]:
            running = heapq.heappushpop(waiting, running)
        rem, jid = running
        next_release = order[i].r if i < n else None
        if next_release is None or t + rem <= next_release:
            t = t + rem
            completions.append(t)
            running = None
        else:
            running = (rem - (next_release - t), jid)
            t = next_release
    return completions


def hungarian(costs: Sequence[Sequence[Rational]]) -> Tuple[List[int], Rational]:
    """Minimum-cost perfect assignment of rows to columns.

    Shortest-augmenting-path Hungarian method with dual potentials, O(m^3).
    Works on any exact numeric type (ints, ``Fraction``).

    Returns:
        ``(assignment, total)`` with ``assignment[i]`` the column given to row ``i``.
    """
    m = len(costs)
    if any(len(row) != m for row in costs):
        raise ValueError("cost matrix must be square")
    if m == 0:
        return [], 0
    inf = math.inf
    # 1-based potentials; column 0 is the virtual root of each augmenting search.
    u = [0] * (m + 1)
    v = [0] * (m + 1)
    owner = [0] * (m + 1)
    way = [0] * (m + 1)
    for row in range(1, m + 1):
        owner[0] = row
        j0 = 0
        minv = [inf] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = owner[j0]
            delta = inf
            j1 = 0
            crow = costs[i0 - 1]
            ui0 = u[i0]
            for j in range(1, m + 1):
                if not used[j]:
                    cur = crow[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[owner[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    assignment = [0] * m
    for j in range(1, m + 1):
        assignment[owner[j] - 1] = j - 1
    total = sum(costs[i][assignment[i]] for i in range(m))
    return assignment, total


def _side(instance: Instance, side: int) -> Tuple[Tuple[Task, ...], Tuple[Task, ...]]:
    """(mono tasks, bi-processor tasks) seen by processor ``side``."""
    mono = instance.of(Proc.P1 if side == 1 else Proc.P2)
    return mono, instance.of(Proc.BOTH)


def lbc(instance: Instance) -> int:
    """Makespan bound: the worse of the two one-machine relaxations."""
    best = 0
    for side in (1, 2):
        mono, both = _side(instance, side)
        t = 0
        for task in sorted(mono + both, key=lambda x: (x.r, x.id)):
            t = max(t, task.r) + task.p
        best = max(best, t)
    return best


def lbtc_side(instance: Instance, side: int) -> Fraction:
    """One processor's share of the total-completion bound.

    Mono tasks are split into two half-length halves (the second released
    halfway through), bi-processor tasks keep weight 1/2, and the Webster
    correction ``p/4`` is added per split task.
    """
    mono, both = _side(instance, side)
    if not mono and not both:
        return Fraction(0)
    # Times doubled so that the half-length halves stay integral.
    jobs = []
    for t in mono:
        jobs.append(PreemptJob((t.id, 1), 2 * t.r, t.p))
        jobs.append(PreemptJob((t.id, 2), 2 * t.r + t.p, t.p))
    for t in both:
        jobs.append(PreemptJob((t.id, 0), 2 * t.r, 2 * t.p))
    doubled = sum(srpt_completions(jobs))
    return Fraction(doubled, 4) + Fraction(sum(t.p for t in mono), 4)


def lbtc(instance: Instance) -> Fraction:
    """Total-completion bound, summed over both processors."""
    return lbtc_side(instance, 1) + lbtc_side(instance, 2)


@dataclass(frozen=True)
class LbttResult:
    value: Fraction
    # Unweighted tardiness the optimal assignment gives each bi-processor task, per side.
    tardiness_p1: Dict[int, int]
    tardiness_p2: Dict[int, int]


def _side_tardiness(
    mono: Sequence[Task], both: Sequence[Task], lam: Mapping[int, Fraction]
) -> Tuple[Fraction, Dict[int, int]]:
    tasks = list(mono) + list(both)
    if not tasks:
        return Fraction(0), {}
    weights = [Fraction(1)] * len(mono) + [Fraction(lam[t.id]) for t in both]
    completions = srpt_completions([PreemptJob(t.id, t.r, t.p) for t in tasks])
    # Integer costs scaled by the common weight denominator keep the solver on ints.
    scale = math.lcm(*(w.denominator for w in weights))
    iw = [int(w * scale) for w in weights]
    costs = [[iw[j] * max(c - t.d, 0) for j, t in enumerate(tasks)] for c in completions]
    assignment, total = hungarian(costs)
    tardiness = {}
    for i, j in enumerate(assignment):
        if j >= len(mono):
            tardiness[tasks[j].id] = max(completions[i] - tasks[j].d, 0)
    return Fraction(total, scale), tardiness


def lbtt(instance: Instance, lam: Mapping[int, Rational]) -> LbttResult:
    """Total-tardiness bound for fixed bi-processor weights.

    ``lam[j]`` weights task ``j`` on processor 1; it gets ``1 - lam[j]`` on
    processor 2. Each side assigns due dates to SRPT completion times by
    minimum-cost assignment.
    """
    both_ids = {t.id for t in instance.of(Proc.BOTH)}
    if set(lam) != both_ids:
        raise ValueError(f"lambda must cover exactly the bi-processor tasks {sorted(both_ids)}")
    lam1 = {j: Fraction(w) for j, w in lam.items()}
    if any(not 0 <= w <= 1 for w in lam1.values()):
        raise ValueError("lambda values must lie in [0, 1]")
    lam2 = {j: 1 - w for j, w in lam1.items()}
    v1, t1 = _side_tardiness(*_side(instance, 1), lam1)
    v2, t2 = _side_tardiness(*_side(instance, 2), lam2)
    return LbttResult(v1 + v2, t1, t2)


def lbtt_optimize(
    instance: Instance,
    step: Fraction = LAMBDA_STEP,
    history: Optional[List[Fraction]] = None,
) -> Fraction:
    """Best LBTT found by one gap-driven adjustment pass over the bi-processor tasks.

    Starting from ``lambda = 1/2`` everywhere, each task's weight moves up by
    ``step`` when its tardiness gap (processor 1 minus processor 2) is
    negative and down when positive, clamped to [0, 1]. Every evaluated
    bound is appended to ``history`` when given; the maximum is returned.
    """
    both = [t.id for t in instance.of(Proc.BOTH)]
    lam = {j: Fraction(1, 2) for j in both}
    res = lbtt(instance, lam)
    best = res.value
    if history is not None:
        history.append(res.value)
    for j in both:
        gap = res.tardiness_p1[j] - res.tardiness_p2[j]
        if gap < 0:
            lam[j] = min(Fraction(1), lam[j] + step)
        elif gap > 0:
            lam[j] = max(Fraction(0), lam[j] - step)
        else:
            continue
        res = lbtt(instance, lam)
        if history is not None:
            history.append(res.value)
        best = max(best, res.value)
    return best


def compute_bounds(instance: Instance) -> BoundVector:
    return BoundVector(lbc(instance), lbtt_optimize(instance), lbtc(instance))
