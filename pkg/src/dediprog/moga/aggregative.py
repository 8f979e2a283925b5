"""Aggregative GA: seven weighted-sum searches with Uniform Design weights."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..model import Instance, ObjectiveVector
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

WeightVector = Tuple[Fraction, ...]


def uniform_matrix(k: int = 3, x: int = 7, sigma: int = 3) -> List[Tuple[int, ...]]:
    """Uniform Design matrix: row r, column i holds ``(r * sigma**(i-1) mod x) + 1``."""
    return [tuple((r * sigma ** (i - 1)) % x + 1 for i in range(1, k + 1)) for r in range(1, x + 1)]


def weight_vectors(matrix: Sequence[Sequence[int]]) -> List[WeightVector]:
    """Each row divided by its own sum."""
    return [tuple(Fraction(u, sum(row)) for u in row) for row in matrix]


def scaled_fitness(s: ObjectiveVector, pop: Sequence[ObjectiveVector], w: Sequence[Fraction]) -> Fraction:
    """Weighted sum of min-max normalised objectives over ``pop``.

    A criterion on which the whole population agrees contributes 0.
    """
    h = Fraction(0)
    for k in range(3):
        lo = min(v[k] for v in pop)
        hi = max(v[k] for v in pop)
        if hi > lo:
            h += Fraction(w[k]) * Fraction(s[k] - lo, hi - lo)
    return h


def _fitness_keys(pop: Sequence[ObjectiveVector], row: Sequence[int]) -> List[int]:
    """Integer keys ordered exactly like ``scaled_fitness`` for weights ``row / sum(row)``.

    Multiplying through by ``sum(row)`` and every non-degenerate range avoids
    rationals in the selection loop.
    """
    lo = [min(v[k] for v in pop) for k in range(3)]
    span = [max(v[k] for v in pop) - lo[k] for k in range(3)]
    spans = [s if s > 0 else 1 for s in span]
    coef = [
        row[k] * math.prod(spans[m] for m in range(3) if m != k) if span[k] > 0 else 0
        for k in range(3)
    ]
    return [sum(coef[k] * (v[k] - lo[k]) for k in range(3)) for v in pop]


def select_by_weight(pool: Sequence[Individual], row: Sequence[int], size: int) -> List[Individual]:
    keys = _fitness_keys([ind.obj for ind in pool], row)
    key_of = {id(ind): k for ind, k in zip(pool, keys)}
    distinct, dups = split_duplicates(pool)
    distinct.sort(key=lambda ind: key_of[id(ind)])
    dups.sort(key=lambda ind: key_of[id(ind)])
    return (distinct + dups)[:size]


def run_aggregative(
    instance: Instance,
    config: GAConfig = GAConfig(),
    on_generation: Optional[GenerationHook] = None,
) -> FrontResult:
    """Evolve one population per weight vector, then merge and keep the non-dominated.

    All seven searches start from the same random population; each draws its
    operator randomness from its own substream of the run seed.
    """
    rows = uniform_matrix()
    generations = config.generations_for(instance)
    with Timer() as timer:
        initial = initial_population(instance, config)
        finals = []
        for k, row in enumerate(rows):
            rng = stream(config.seed, OPERATOR_STREAM, k)
            pop = list(initial)
            for g in range(generations):
                offspring = []
                while len(offspring) < config.pop_size:
                    i, j = rng.integers(len(pop), size=2)
                    for child in random_crossover(rng, pop[i].perm, pop[j].perm, config.crossover_rate):
                        offspring.append(
                            make_individual(instance, random_mutation(rng, child, config.mutation_rate))
                        )
                pop = select_by_weight(pop + offspring[: config.pop_size], row, config.pop_size)
                if on_generation is not None:
                    on_generation(g, pop)
            finals.append(pop)
        front = final_front(ind for pop in finals for ind in pop)
    return FrontResult(
        "agg",
        front,
        [ind.obj for ind in initial],
        timer.elapsed,
        extra={"stream_populations": finals},
    )
