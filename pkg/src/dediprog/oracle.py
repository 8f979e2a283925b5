"""Exact Pareto front over every decodable schedule of a small instance."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List

from .metrics import pareto_filter
from .model import Instance, ObjectiveVector, objectives

DEFAULT_LIMIT = 9


class SizeExceededError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    front: List[ObjectiveVector]  # sorted ascending
    min_cmax: int
    min_tt: int
    min_tc: int
    enumerated: int


def exact_front(instance: Instance, limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Decode all ``Nb!`` permutations and keep the non-dominated objective vectors.

    Raises:
        SizeExceededError: if the instance has more than ``limit`` tasks.
    """
    if instance.nb > limit:
        raise SizeExceededError(
            f"exhaustive enumeration limited to {limit} tasks, instance has {instance.nb}"
        )
    vectors = set()
    count = 0
    for perm in itertools.permutations(instance.ids()):
        vectors.add(objectives(instance, perm))
        count += 1
    front = sorted(pareto_filter(sorted(vectors)))
    return OracleResult(
        front=front,
        min_cmax=min(v.cmax for v in vectors),
        min_tt=min(v.total_tardiness for v in vectors),
        min_tc=min(v.total_completion for v in vectors),
        enumerated=count,
    )
