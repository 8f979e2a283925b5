"""Command-line front end: ``dediprog {gen,bound,solve,exact,bench}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import instgen
from .bounds import compute_bounds
from .instgen import ALPHAS, PROBLEM_TYPES, GenSpec, format_alpha
from .moga import ALGORITHMS, GAConfig
from .oracle import DEFAULT_LIMIT, exact_front
from .runner import (
    bench_rows,
    bounds_json,
    default_jobs,
    fmt_exact,
    rows_to_csv,
    solve,
)


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _csv_list(text: str) -> List[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _dumps(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_gen(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for k in range(args.count):
        spec = GenSpec(args.type, args.n, args.alpha, args.seed + k, pmax=args.pmax, pmin=args.pmin)
        path = out / f"t{spec.problem_type}_n{spec.n}_a{format_alpha(spec.alpha)}_s{spec.seed}.txt"
        instance = instgen.generate(spec)
        instgen.write(instance, path)
        print(f"{path}\t{instance.nb}")
    return 0


def cmd_bound(args: argparse.Namespace) -> int:
    instance = instgen.read(args.instance)
    bounds = compute_bounds(instance)
    print(f"LBC  {bounds.lbc}")
    print(f"LBTT {fmt_exact(bounds.lbtt)}")
    print(f"LBTC {fmt_exact(bounds.lbtc)}")
    print(json.dumps(bounds_json(instance, bounds), sort_keys=True))
    return 0


def _config(args: argparse.Namespace, seed: int) -> GAConfig:
    return GAConfig(
        pop_size=args.pop_size,
        generations=args.generations,
        crossover_rate=args.crossover_rate,
        mutation_rate=args.mutation_rate,
        seed=seed,
    )


def cmd_solve(args: argparse.Namespace) -> int:
    instance = instgen.read(args.instance)
    record = solve(
        instance, args.algo, _config(args, args.seed), Path(args.instance).stem, not args.no_timing
    )
    _emit(_dumps(record.to_json()), args.out)
    return 0


def cmd_exact(args: argparse.Namespace) -> int:
    instance = instgen.read(args.instance)
    res = exact_front(instance, args.limit)
    _emit(
        _dumps(
            {
                "front": [list(v) for v in res.front],
                "min_cmax": res.min_cmax,
                "min_tt": res.min_tt,
                "min_tc": res.min_tc,
                "enumerated": res.enumerated,
            }
        ),
        args.out,
    )
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    types = PROBLEM_TYPES if args.all_types or not args.type else tuple(args.type)
    alphas = ALPHAS if args.all_alphas or not args.alpha else tuple(args.alpha)
    rows = bench_rows(
        n=args.n,
        types=types,
        alphas=alphas,
        count=args.count,
        seed=args.seed,
        algorithms=_csv_list(args.algos),
        config=_config(args, args.seed),
        jobs=args.jobs,
        timing=not args.no_timing,
    )
    _emit(rows_to_csv(rows), args.out)
    return 0


def _add_ga_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("GA configuration")
    g.add_argument("--pop-size", type=int, default=28)
    g.add_argument("--generations", type=int, default=None, help="default: 2 * Nb")
    g.add_argument("--crossover-rate", type=float, default=0.8)
    g.add_argument("--mutation-rate", type=float, default=0.2)
    p.add_argument("--no-timing", action="store_true",
                   help="report wall times as 0 so reruns are byte-identical")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dediprog",
        description="Multi-objective scheduling on two dedicated processors.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate random instances")
    p.add_argument("--type", type=int, choices=PROBLEM_TYPES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_fraction, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pmax", type=int, default=50)
    p.add_argument("--pmin", type=int, default=0, help="use 1 to exclude zero processing times")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bound", help="print LBC, LBTT and LBTC")
    p.add_argument("instance")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("solve", help="run one algorithm and print its RunRecord JSON")
    p.add_argument("instance")
    p.add_argument("--algo", choices=tuple(ALGORITHMS), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    _add_ga_options(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="exhaustive Pareto front of a small instance")
    p.add_argument("instance")
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bench", help="sweep problem types and alphas, write a CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--type", type=int, choices=PROBLEM_TYPES, action="append",
                   help="repeatable (default: all five types)")
    p.add_argument("--alpha", type=_fraction, action="append",
                   help="repeatable (default: 0.5, 1 and 1.5)")
    p.add_argument("--all-types", action="store_true")
    p.add_argument("--all-alphas", action="store_true")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", "--seeds", dest="seed", type=int, default=0,
                   help="instance i of each group uses seed + i")
    p.add_argument("--algos", default=",".join(ALGORITHMS))
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--out", help="CSV path (default: stdout)")
    _add_ga_options(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"dediprog {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
