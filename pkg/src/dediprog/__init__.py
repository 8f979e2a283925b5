"""Multi-objective scheduling on two dedicated processors.

Makespan, total tardiness and total completion time are minimised together
by three genetic algorithms, measured against certified lower bounds and,
on small instances, against an exhaustive Pareto front.
"""

__version__ = "0.1.0"
