"""Permutation genome, GA configuration, and the operators shared by all strategies."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..metrics import pareto_filter
from ..model import Instance, ObjectiveVector, objectives

Perm = Tuple[int, ...]
GenerationHook = Callable[[int, List["Individual"]], None]

# Substream keys under the run seed.
INIT_STREAM = 0
OPERATOR_STREAM = 1


@dataclass(frozen=True)
class GAConfig:
    pop_size: int = 28
    generations: Optional[int] = None  # None means 2 * Nb
    crossover_rate: float = 0.8
    mutation_rate: float = 0.2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if self.generations is not None and self.generations < 1:
            raise ValueError("generations must be positive")
        for name in ("crossover_rate", "mutation_rate"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    def generations_for(self, instance: Instance) -> int:
        return self.generations if self.generations is not None else 2 * instance.nb


@dataclass(frozen=True)
class Individual:
    perm: Perm
    obj: ObjectiveVector


@dataclass
class FrontResult:
    algorithm: str
    front: List[Individual]
    initial: List[ObjectiveVector]
    wall_time: float = 0.0
    # Per-algorithm extras (e.g. the seven aggregative streams' final populations).
    extra: Dict[str, object] = field(default_factory=dict)

    @property
    def nd(self) -> int:
        return len(self.front)

    def vectors(self) -> List[ObjectiveVector]:
        return [ind.obj for ind in self.front]


def stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def make_individual(instance: Instance, perm: Sequence[int]) -> Individual:
    perm = tuple(perm)
    return Individual(perm, objectives(instance, perm))


def initial_population(instance: Instance, config: GAConfig) -> List[Individual]:
    rng = stream(config.seed, INIT_STREAM)
    ids = np.arange(1, instance.nb + 1)
    return [
        make_individual(instance, rng.permutation(ids).tolist()) for _ in range(config.pop_size)
    ]


def crossover(p1: Sequence[int], p2: Sequence[int], cut: int) -> Tuple[Perm, Perm]:
    """One-point order crossover.

    Each child keeps its first parent's prefix of length ``cut`` and takes the
    missing ids in the order they appear in the other parent.
    """
    if not 1 <= cut < len(p1):
        raise ValueError(f"cut must lie in [1, {len(p1) - 1}], got {cut}")

    def child(a: Sequence[int], b: Sequence[int]) -> Perm:
        head = tuple(a[:cut])
        taken = set(head)
        return head + tuple(x for x in b if x not in taken)

    return child(p1, p2), child(p2, p1)


def mutate(p: Sequence[int], i: int, j: int) -> Perm:
    """Swap the entries at positions ``i`` and ``j``."""
    out = list(p)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def random_crossover(
    rng: np.random.Generator, a: Perm, b: Perm, rate: float
) -> Tuple[Perm, Perm]:
    if len(a) < 2 or rng.random() >= rate:
        return a, b
    return crossover(a, b, int(rng.integers(1, len(a))))


def random_mutation(rng: np.random.Generator, p: Perm, rate: float) -> Perm:
    if len(p) < 2 or rng.random() >= rate:
        return p
    return swap_random(rng, p)


def swap_random(rng: np.random.Generator, p: Perm) -> Perm:
    """Swap two distinct random positions (identity for a single task)."""
    n = len(p)
    if n < 2:
        return p
    i = int(rng.integers(n))
    j = int(rng.integers(n - 1))
    if j >= i:
        j += 1
    return mutate(p, i, j)


def split_duplicates(pool: Iterable[Individual]) -> Tuple[List[Individual], List[Individual]]:
    """(first occurrence of each genome, repeated genomes), both in pool order.

    Selection ranks distinct genomes first so that copies of one good
    permutation cannot crowd the rest of the population out.
    """
    seen = set()
    distinct, dups = [], []
    for ind in pool:
        if ind.perm in seen:
            dups.append(ind)
        else:
            seen.add(ind.perm)
            distinct.append(ind)
    return distinct, dups


def nondominated(pop: Sequence[Individual]) -> List[Individual]:
    """Members whose objective vector no other member dominates."""
    keep = set(map(tuple, pareto_filter(ind.obj for ind in pop)))
    return [ind for ind in pop if tuple(ind.obj) in keep]


def final_front(pop: Iterable[Individual]) -> List[Individual]:
    """Non-dominated members, one per distinct objective vector, sorted by objectives."""
    return sorted(pareto_filter_individuals(pop), key=lambda ind: ind.obj)


def pareto_filter_individuals(pop: Iterable[Individual]) -> List[Individual]:
    by_vec: Dict[ObjectiveVector, Individual] = {}
    for ind in pop:
        by_vec.setdefault(ind.obj, ind)
    keep = set(pareto_filter(by_vec))
    return [ind for vec, ind in by_vec.items() if vec in keep]


class Timer:
    def __enter__(self) -> "Timer":
        self.start = time.perf_counter()
        self.elapsed = 0.0
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed = time.perf_counter() - self.start
