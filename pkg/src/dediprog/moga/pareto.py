"""Pareto GA: cross the non-dominated, mutate the dominated, keep the non-dominated."""

from __future__ import annotations

from typing import List, Optional

from ..model import Instance
from .nsga2 import crowding_distance
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
    nondominated,
    random_crossover,
    random_mutation,
    split_duplicates,
    stream,
    swap_random,
)

# Tie-break orders for the three one-third refills: criterion first, then the others.
_REFILL_KEYS = (
    lambda ind: (ind.obj[0], ind.obj[1], ind.obj[2]),
    lambda ind: (ind.obj[1], ind.obj[0], ind.obj[2]),
    lambda ind: (ind.obj[2], ind.obj[0], ind.obj[1]),
)


def _truncate_by_crowding(front: List[Individual], size: int) -> List[Individual]:
    dist = crowding_distance([ind.obj for ind in front])
    order = sorted(range(len(front)), key=lambda i: -dist[i])
    return [front[i] for i in sorted(order[:size])]


def refill(elite: List[Individual], rest: List[Individual], size: int) -> List[Individual]:
    """Top up ``elite`` to ``size``: a third by makespan, a third by tardiness, the rest by completion.

    Thirds use floor division; the completion-time share absorbs the remainder.
    """
    missing = size - len(elite)
    third = missing // 3
    quotas = (third, third, missing - 2 * third)
    chosen = list(elite)
    pool = list(rest)
    for key, quota in zip(_REFILL_KEYS, quotas):
        pool.sort(key=key)
        chosen.extend(pool[:quota])
        pool = pool[quota:]
    return chosen


def run_pareto(
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
            nd = nondominated(pop)
            nd_perms = {ind.perm for ind in nd}
            dominated = [ind for ind in pop if ind.perm not in nd_perms]
            children = []
            while len(children) < config.pop_size:
                # A lone non-dominated individual is paired with itself.
                i, j = rng.integers(len(nd), size=2)
                if len(nd) > 1:
                    while j == i:
                        j = rng.integers(len(nd))
                for child in random_crossover(rng, nd[i].perm, nd[j].perm, config.crossover_rate):
                    children.append(
                        make_individual(instance, random_mutation(rng, child, config.mutation_rate))
                    )
            mutants = [make_individual(instance, swap_random(rng, ind.perm)) for ind in dominated]
            distinct, dups = split_duplicates(pop + children[: config.pop_size] + mutants)
            elite = nondominated(distinct)
            if len(elite) > config.pop_size:
                pop = _truncate_by_crowding(elite, config.pop_size)
            else:
                elite_perms = {ind.perm for ind in elite}
                rest = [ind for ind in distinct if ind.perm not in elite_perms]
                pop = refill(elite, rest, config.pop_size)
                if len(pop) < config.pop_size:
                    pop = refill(pop, dups, config.pop_size)
            if on_generation is not None:
                on_generation(g, pop)
        front = final_front(pop)
    return FrontResult("pareto", front, [ind.obj for ind in initial], timer.elapsed)
