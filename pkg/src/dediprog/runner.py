"""Single runs, benchmark sweeps, and their JSON / CSV renderings.

Every reported number comes from an exact rational and is rendered with a
fixed number of decimals, so a rerun with the same seeds reproduces the
output byte for byte (wall times excepted; see ``timing``).
"""

from __future__ import annotations

import csv
import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .bounds import BoundVector, compute_bounds, lbtc_side
from .instgen import ALPHAS, PROBLEM_TYPES, GenSpec, format_alpha, generate
from .metrics import UndefinedRatioError, hv_ratio, hypervolume3, reference_point
from .model import Instance, ObjectiveVector
from .moga import ALGORITHMS, FrontResult, GAConfig

log = logging.getLogger(__name__)

BENCH_HEADER = [
    "type", "alpha", "algo", "c_ratio", "tt_ratio", "tt_absolute_flag",
    "tc_ratio", "nd", "hv_r_pct", "time_s",
]


def fmt3(x: Rational) -> str:
    """Fixed three-decimal rendering of an exact value (round half to even)."""
    scaled = round(Fraction(x) * 1000)
    sign = "-" if scaled < 0 else ""
    q, r = divmod(abs(scaled), 1000)
    return f"{sign}{q}.{r:03d}"


def fmt_exact(x: Rational) -> str:
    """Shortest exact decimal for values whose denominator has only factors 2 and 5."""
    x = Fraction(x)
    for digits in range(0, 12):
        scaled = x * 10**digits
        if scaled.denominator == 1:
            if digits == 0:
                return str(scaled.numerator)
            sign = "-" if scaled < 0 else ""
            q, r = divmod(abs(scaled.numerator), 10**digits)
            return f"{sign}{q}.{r:0{digits}d}"
    return fmt3(x)


def rational_json(x: Rational) -> Dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def bounds_json(instance: Instance, bounds: BoundVector) -> Dict[str, object]:
    return {
        "lbc": bounds.lbc,
        "lbtt": rational_json(bounds.lbtt),
        "lbtc": rational_json(bounds.lbtc),
        "lbtc_p1": rational_json(lbtc_side(instance, 1)),
        "lbtc_p2": rational_json(lbtc_side(instance, 2)),
    }


@dataclass(frozen=True)
class Ratios:
    c_ratio: Optional[Fraction]
    tt_ratio: Optional[Fraction]  # None when LBTT is 0
    tt_absolute: int  # best total tardiness; reported instead of the ratio when LBTT is 0
    tc_ratio: Optional[Fraction]


def quality_ratios(front: Sequence[ObjectiveVector], bounds: BoundVector) -> Ratios:
    """Best value per criterion over the front divided by its bound (None for a zero bound)."""
    best = [min(v[k] for v in front) for k in range(3)]

    def ratio(value: int, bound: Rational) -> Optional[Fraction]:
        return Fraction(value) / bound if bound > 0 else None

    return Ratios(
        ratio(best[0], bounds.lbc),
        ratio(best[1], bounds.lbtt),
        best[1],
        ratio(best[2], bounds.lbtc),
    )


def front_hypervolume(front: Iterable[Sequence[Rational]], ref: Sequence[Rational]) -> Rational:
    """Hypervolume counting only points inside the reference box.

    A point worse than the reference in some criterion spans an empty box and
    adds nothing, so it is dropped rather than rejected.
    """
    inside = [p for p in front if all(a <= b for a, b in zip(p, ref))]
    return hypervolume3(inside, ref)


@dataclass
class RunRecord:
    instance_id: str
    algorithm: str
    seed: int
    config: Dict[str, object]
    front: List[List[int]]
    nd: int
    wall_time: float
    reference_point: List[int]
    hv: Fraction
    hv_lb: Fraction
    hv_ratio: Optional[Fraction]
    bounds: BoundVector
    ratios: Ratios

    def to_json(self) -> Dict[str, object]:
        def opt3(x: Optional[Fraction]) -> Optional[float]:
            return None if x is None else float(fmt3(x))

        return {
            "instance_id": self.instance_id,
            "algorithm": self.algorithm,
            "seed": self.seed,
            "config": self.config,
            "front": self.front,
            "nd": self.nd,
            "wall_time_s": float(fmt3(Fraction(self.wall_time))),
            "reference_point": self.reference_point,
            "hv": rational_json(self.hv),
            "hv_lb": rational_json(self.hv_lb),
            "hv_ratio": opt3(self.hv_ratio),
            "hv_r_pct": opt3(None if self.hv_ratio is None else 100 * self.hv_ratio),
            "bounds": {
                "lbc": self.bounds.lbc,
                "lbtt": rational_json(self.bounds.lbtt),
                "lbtc": rational_json(self.bounds.lbtc),
            },
            "ratios": {
                "c_ratio": opt3(self.ratios.c_ratio),
                "tt_ratio": opt3(self.ratios.tt_ratio),
                "tt_absolute_flag": self.ratios.tt_ratio is None,
                "tt_absolute": self.ratios.tt_absolute,
                "tc_ratio": opt3(self.ratios.tc_ratio),
            },
        }


def build_record(
    instance_id: str,
    result: FrontResult,
    config: GAConfig,
    bounds: BoundVector,
    ref: Sequence[int],
    timing: bool = True,
) -> RunRecord:
    vectors = result.vectors()
    hv = front_hypervolume(vectors, ref)
    hv_lb = hypervolume3([bounds.as_point()], ref)
    try:
        ratio: Optional[Fraction] = hv_ratio(hv, hv_lb)
    except UndefinedRatioError:
        log.warning("%s/%s: lower-bound hypervolume is zero, HV ratio undefined",
                    instance_id, result.algorithm)
        ratio = None
    return RunRecord(
        instance_id=instance_id,
        algorithm=result.algorithm,
        seed=config.seed,
        config=asdict(config),
        front=[list(v) for v in vectors],
        nd=result.nd,
        wall_time=result.wall_time if timing else 0.0,
        reference_point=list(ref),
        hv=Fraction(hv),
        hv_lb=Fraction(hv_lb),
        hv_ratio=ratio,
        bounds=bounds,
        ratios=quality_ratios(vectors, bounds),
    )


def solve(
    instance: Instance,
    algorithm: str,
    config: GAConfig,
    instance_id: str = "instance",
    timing: bool = True,
) -> RunRecord:
    """Run one algorithm; the reference point comes from its own initial population."""
    try:
        run = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}"
        ) from None
    result = run(instance, config)
    ref = reference_point([result.initial])
    return build_record(instance_id, result, config, compute_bounds(instance), ref, timing)


def solve_shared(
    instance: Instance,
    algorithms: Sequence[str],
    config: GAConfig,
    instance_id: str,
    timing: bool = True,
) -> List[RunRecord]:
    """Run several algorithms against one reference point built from all their initial populations."""
    results = [ALGORITHMS[a](instance, config) for a in algorithms]
    ref = reference_point([r.initial for r in results])
    bounds = compute_bounds(instance)
    return [build_record(instance_id, r, config, bounds, ref, timing) for r in results]


@dataclass(frozen=True)
class BenchTask:
    problem_type: int
    alpha: Fraction
    index: int
    n: int
    seed: int
    algorithms: Tuple[str, ...]
    config: GAConfig
    timing: bool


def _bench_one(task: BenchTask) -> Tuple[BenchTask, Optional[List[RunRecord]], Optional[str]]:
    try:
        instance = generate(GenSpec(task.problem_type, task.n, task.alpha, task.seed))
        iid = f"t{task.problem_type}_a{format_alpha(task.alpha)}_{task.index}"
        return task, solve_shared(instance, task.algorithms, task.config, iid, task.timing), None
    except Exception as exc:  # reported per group; the sweep goes on
        return task, None, f"{type(exc).__name__}: {exc}"


def _mean(values: Sequence[Fraction]) -> Fraction:
    return sum(values, Fraction(0)) / len(values)


def bench_rows(
    n: int,
    types: Sequence[int] = PROBLEM_TYPES,
    alphas: Sequence[Fraction] = ALPHAS,
    count: int = 10,
    seed: int = 0,
    algorithms: Sequence[str] = tuple(ALGORITHMS),
    config: GAConfig = GAConfig(),
    jobs: int = 1,
    timing: bool = True,
) -> List[List[str]]:
    """One CSV row per (type, alpha, algorithm) with group means.

    Instance ``i`` of every group is generated with seed ``seed + i`` and
    each algorithm runs with that same seed. Groups with a failed instance
    are skipped with a logged reason.
    """
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    algorithms = tuple(sorted(set(algorithms), key=list(ALGORITHMS).index))
    tasks = [
        BenchTask(t, Fraction(al), i, n, seed + i, algorithms, replace(config, seed=seed + i), timing)
        for t in types
        for al in alphas
        for i in range(count)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_bench_one, tasks))
    else:
        outcomes = [_bench_one(t) for t in tasks]

    groups: Dict[Tuple[int, Fraction], List[List[RunRecord]]] = {}
    failed: Dict[Tuple[int, Fraction], str] = {}
    for task, records, err in outcomes:
        key = (task.problem_type, task.alpha)
        if err is not None:
            failed.setdefault(key, err)
        else:
            groups.setdefault(key, []).append(records)
    for (t, al), reason in sorted(failed.items()):
        log.error("group type=%d alpha=%s aborted: %s", t, format_alpha(al), reason)

    rows = []
    for t in types:
        for al in alphas:
            key = (t, Fraction(al))
            if key in failed or key not in groups:
                continue
            per_instance = groups[key]
            for k, algo in enumerate(algorithms):
                recs = [inst[k] for inst in per_instance]
                rows.append(_group_row(t, Fraction(al), algo, recs))
    return rows


def _group_row(t: int, alpha: Fraction, algo: str, recs: Sequence[RunRecord]) -> List[str]:
    def mean_or_blank(values: List[Optional[Fraction]]) -> str:
        present = [v for v in values if v is not None]
        return fmt3(_mean(present)) if present else ""

    tt = [r.ratios.tt_ratio for r in recs]
    if any(v is not None for v in tt):
        # Mean over instances whose tardiness bound is positive.
        tt_cell, tt_flag = mean_or_blank(tt), "0"
    else:
        tt_cell, tt_flag = fmt3(_mean([Fraction(r.ratios.tt_absolute) for r in recs])), "1"
    hv = [None if r.hv_ratio is None else 100 * r.hv_ratio for r in recs]
    return [
        str(t),
        format_alpha(alpha),
        algo,
        mean_or_blank([r.ratios.c_ratio for r in recs]),
        tt_cell,
        tt_flag,
        mean_or_blank([r.ratios.tc_ratio for r in recs]),
        fmt3(_mean([Fraction(r.nd) for r in recs])),
        mean_or_blank(hv),
        fmt3(_mean([Fraction(r.wall_time) for r in recs])),
    ]


def rows_to_csv(rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    writer.writerows(rows)
    return buf.getvalue()


def default_jobs() -> int:
    return max(1, os.cpu_count() or 1)
