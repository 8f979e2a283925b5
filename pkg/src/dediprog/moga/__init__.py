"""Multi-objective genetic algorithms over task permutations."""

from .aggregative import run_aggregative, scaled_fitness, uniform_matrix, weight_vectors
from .nsga2 import crowded_less, crowding_distance, fast_nondominated_sort, run_nsga2
from .operators import FrontResult, GAConfig, Individual, crossover, mutate
from .pareto import run_pareto

ALGORITHMS = {
    "agg": run_aggregative,
    "pareto": run_pareto,
    "nsga2": run_nsga2,
}

__all__ = [
    "ALGORITHMS",
    "FrontResult",
    "GAConfig",
    "Individual",
    "crossover",
    "crowded_less",
    "crowding_distance",
    "fast_nondominated_sort",
    "mutate",
    "run_aggregative",
    "run_nsga2",
    "run_pareto",
    "scaled_fitness",
    "uniform_matrix",
    "weight_vectors",
]
