"""NSGA-II: fast non-dominated sorting, crowding distance, elitist replacement."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from ..metrics import dominates
from ..model import Instance
from .operators import (
    OPERATOR_STREAM,
    FrontResult,
    GAConfig,
    GenerationHook,
    Individual,
    Timer,
    final_front,
    initial_population,
    make_individual,
    random_crossover,
    random_mutation,
    split_duplicates,
    stream,
)

Distance = Union[Fraction, float]  # float only for +inf


def fast_nondominated_sort(points: Sequence[Sequence]) -> List[List[int]]:
    """Partition indices of ``points`` into fronts F1, F2, ... (Deb's O(MN^2) sort)."""
    n = len(points)
    if n == 0:
        raise ValueError("cannot sort an empty population")
    dominated_by: List[List[int]] = [[] for _ in range(n)]
    count = [0] * n
    for p in range(n):
        for q in range(p + 1, n):
            if dominates(points[p], points[q]):
                dominated_by[p].append(q)
                count[q] += 1
            elif dominates(points[q], points[p]):
                dominated_by[q].append(p)
                count[p] += 1
    fronts = [[p for p in range(n) if count[p] == 0]]
    while True:
        nxt = []
        for p in fronts[-1]:
            for q in dominated_by[p]:
                count[q] -= 1
                if count[q] == 0:
                    nxt.append(q)
        if not nxt:
            return fronts
        fronts.append(sorted(nxt))


def crowding_distance(front: Sequence[Sequence]) -> List[Distance]:
    """Crowding distance of each member of one front, aligned with the input.

    Per objective the extremes get +inf and interior members add the
    normalised gap between their two neighbours; an objective on which the
    whole front agrees adds nothing.
    """
    n = len(front)
    if n == 0:
        raise ValueError("cannot measure an empty front")
    dist: List[Distance] = [Fraction(0)] * n
    if n <= 2:
        return [math.inf] * n
    for k in range(len(front[0])):
        order = sorted(range(n), key=lambda i: front[i][k])
        lo, hi = front[order[0]][k], front[order[-1]][k]
        dist[order[0]] = dist[order[-1]] = math.inf
        if hi == lo:
            continue
        for a in range(1, n - 1):
            i = order[a]
            if dist[i] != math.inf:
                dist[i] += Fraction(front[order[a + 1]][k] - front[order[a - 1]][k], hi - lo)
    return dist


def crowded_less(a: Tuple[int, Distance], b: Tuple[int, Distance]) -> bool:
    """``a`` precedes ``b``: lower rank, or equal rank and larger crowding distance."""
    return a[0] < b[0] or (a[0] == b[0] and a[1] > b[1])


def rank_and_crowding(pop: Sequence[Individual]) -> List[Tuple[int, Distance]]:
    objs = [ind.obj for ind in pop]
    out: List[Tuple[int, Distance]] = [(0, Fraction(0))] * len(pop)
    for r, front in enumerate(fast_nondominated_sort(objs)):
        for i, d in zip(front, crowding_distance([objs[i] for i in front])):
            out[i] = (r, d)
    return out


def environmental_selection(pool: Sequence[Individual], size: int) -> List[Individual]:
    """Fill front by front; cut the straddling front by descending crowding distance."""
    distinct, dups = split_duplicates(pool)
    objs = [ind.obj for ind in distinct]
    chosen: List[Individual] = []
    for front in fast_nondominated_sort(objs):
        room = size - len(chosen)
        if room <= 0:
            break
        if len(front) <= room:
            chosen.extend(distinct[i] for i in front)
        else:
            dist = crowding_distance([objs[i] for i in front])
            best = sorted(range(len(front)), key=lambda a: -dist[a])[:room]
            chosen.extend(distinct[front[a]] for a in sorted(best))
    chosen.extend(dups[: size - len(chosen)])
    return chosen


def run_nsga2(
    instance: Instance,
    config: GAConfig = GAConfig(),
    on_generation: Optional[GenerationHook] = None,
) -> FrontResult:
    generations = config.generations_for(instance)
    rng = stream(config.seed, OPERATOR_STREAM)
    with Timer() as timer:
        initial = initial_population(instance, config)
        pop = list(initial)
        for g in range(generations):
            fit = rank_and_crowding(pop)

            def tournament() -> Individual:
                i, j = (int(x) for x in rng.integers(len(pop), size=2))
                return pop[j] if crowded_less(fit[j], fit[i]) else pop[i]

            children: List[Individual] = []
            while len(children) < config.pop_size:
                a, b = tournament(), tournament()
                for child in random_crossover(rng, a.perm, b.perm, config.crossover_rate):
                    children.append(
                        make_individual(instance, random_mutation(rng, child, config.mutation_rate))
                    )
            pop = environmental_selection(pop + children[: config.pop_size], config.pop_size)
            if on_generation is not None:
                on_generation(g, pop)
        front = final_front(pop[i] for i in fast_nondominated_sort([ind.obj for ind in pop])[0])
    return FrontResult("nsga2", front, [ind.obj for ind in initial], timer.elapsed)
