"""Tasks, instances, the permutation decoder and the three objectives.

A task needs processor 1, processor 2, or both at once. Schedules are built
from a permutation by append-style list scheduling: each task goes at the
earliest time its release date and the current availability of its
processor(s) allow, and earlier idle gaps are never revisited.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Dict, NamedTuple, Optional, Sequence, Tuple


class Proc(IntEnum):
    """Processor requirement. Values double as the instance-file class codes."""

    P1 = 1
    P2 = 2
    BOTH = 12

    @property
    def uses_p1(self) -> bool:
        return self is not Proc.P2

    @property
    def uses_p2(self) -> bool:
        return self is not Proc.P1


class InvalidPermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Task:
    id: int
    proc: Proc
    r: int
    p: int
    d: int

    def __post_init__(self) -> None:
        if self.r < 0 or self.p < 0 or self.d < 0:
            raise ValueError(f"task {self.id}: r, p and d must be non-negative")


@dataclass(frozen=True)
class Meta:
    """Generation metadata carried alongside an instance."""

    problem_type: int
    n: int
    alpha: Fraction
    seed: int


@dataclass(frozen=True)
class Instance:
    tasks: Tuple[Task, ...]
    meta: Optional[Meta] = None
    # Column views indexed by task id (slot 0 unused); filled in __post_init__.
    _proc: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _r: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _p: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _d: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        tasks = tuple(sorted(self.tasks, key=lambda t: t.id))
        if not tasks:
            raise ValueError("an instance needs at least one task")
        ids = [t.id for t in tasks]
        if ids != list(range(1, len(tasks) + 1)):
            raise ValueError(f"task ids must be distinct and cover 1..{len(tasks)}, got {ids}")
        object.__setattr__(self, "tasks", tasks)
        object.__setattr__(self, "_proc", (0,) + tuple(int(t.proc) for t in tasks))
        object.__setattr__(self, "_r", (0,) + tuple(t.r for t in tasks))
        object.__setattr__(self, "_p", (0,) + tuple(t.p for t in tasks))
        object.__setattr__(self, "_d", (0,) + tuple(t.d for t in tasks))

    @property
    def nb(self) -> int:
        return len(self.tasks)

    def task(self, task_id: int) -> Task:
        return self.tasks[task_id - 1]

    def ids(self) -> Tuple[int, ...]:
        return tuple(range(1, self.nb + 1))

    def of(self, *procs: Proc) -> Tuple[Task, ...]:
        """Tasks whose requirement class is one of ``procs``, in id order."""
        return tuple(t for t in self.tasks if t.proc in procs)

    def counts(self) -> Tuple[int, int, int]:
        """(n1, n2, n12)."""
        return (len(self.of(Proc.P1)), len(self.of(Proc.P2)), len(self.of(Proc.BOTH)))


class ObjectiveVector(NamedTuple):
    cmax: int
    total_tardiness: int
    total_completion: int


@dataclass(frozen=True)
class Schedule:
    start: Dict[int, int]
    completion: Dict[int, int]


def check_permutation(instance: Instance, perm: Sequence[int]) -> None:
    if len(perm) != instance.nb or sorted(perm) != list(range(1, instance.nb + 1)):
        raise InvalidPermutationError(
            f"not a permutation of task ids 1..{instance.nb}: {list(perm)}"
        )


def decode(instance: Instance, perm: Sequence[int]) -> Schedule:
    """Build the append-style list schedule for ``perm``.

    Raises:
        InvalidPermutationError: if ``perm`` misses or repeats a task id.
    """
    check_permutation(instance, perm)
    proc, r, p = instance._proc, instance._r, instance._p
    a1 = a2 = 0
    start: Dict[int, int] = {}
    completion: Dict[int, int] = {}
    for j in perm:
        c = proc[j]
        if c == 1:
            s = max(a1, r[j])
        elif c == 2:
            s = max(a2, r[j])
        else:
            s = max(a1, a2, r[j])
        f = s + p[j]
        # A zero-length task is placed but leaves availability untouched.
        if p[j]:
            if c != 2:
                a1 = f
            if c != 1:
                a2 = f
        start[j] = s
        completion[j] = f
    return Schedule(start, completion)


def evaluate(instance: Instance, sched: Schedule) -> ObjectiveVector:
    d = instance._d
    comp = sched.completion
    return ObjectiveVector(
        max(comp.values()),
        sum(max(c - d[j], 0) for j, c in comp.items()),
        sum(comp.values()),
    )


def objectives(instance: Instance, perm: Sequence[int]) -> ObjectiveVector:
    """``evaluate(decode(...))`` without materialising the schedule.

    This is the GA hot path, so the permutation is trusted.
    """
    proc, r, p, d = instance._proc, instance._r, instance._p, instance._d
    a1 = a2 = 0
    cmax = tt = tc = 0
    for j in perm:
        c = proc[j]
        rj = r[j]
        pj = p[j]
        if c == 1:
            f = (a1 if a1 > rj else rj) + pj
            if pj:
                a1 = f
        elif c == 2:
            f = (a2 if a2 > rj else rj) + pj
            if pj:
                a2 = f
        else:
            s = a1 if a1 > a2 else a2
            f = (s if s > rj else rj) + pj
            if pj:
                a1 = a2 = f
        tc += f
        if f > cmax:
            cmax = f
        if f > d[j]:
            tt += f - d[j]
    return ObjectiveVector(cmax, tt, tc)


def validate(instance: Instance, sched: Schedule) -> bool:
    """True iff ``sched`` is a feasible non-preemptive schedule of ``instance``."""
    ids = set(instance.ids())
    if set(sched.start) != ids or set(sched.completion) != ids:
        return False
    for t in instance.tasks:
        s, c = sched.start[t.id], sched.completion[t.id]
        if s < t.r or c != s + t.p:
            return False
    for uses in (lambda t: t.proc.uses_p1, lambda t: t.proc.uses_p2):
        side = [t for t in instance.tasks if uses(t)]
        # Zero-length tasks occupy no time, so they cannot overlap anything.
        busy = sorted(
            (sched.start[t.id], sched.completion[t.id]) for t in side if t.p > 0
        )
        for (_, c0), (s1, _) in zip(busy, busy[1:]):
            if s1 < c0:
                return False
    return True


def table1_instance(due_slack: int = 1000) -> Instance:
    """The seven-task worked example used to illustrate LBC and LBTC.

    It carries no due dates, so ``d = r + p + due_slack`` is injected; with the
    default slack no schedule of interest is ever tardy.
    """
    rows = [
        (1, Proc.P1, 2, 6),
        (2, Proc.P1, 4, 2),
        (3, Proc.BOTH, 1, 2),
        (4, Proc.P1, 0, 8),
        (5, Proc.P2, 3, 2),
        (6, Proc.P2, 2, 6),
        (7, Proc.P2, 1, 2),
    ]
    return Instance(tuple(Task(i, c, r, p, r + p + due_slack) for i, c, r, p in rows))
