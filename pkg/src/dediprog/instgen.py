"""Random instance generation and the ``DEDIPROG v1`` text format.

File layout (ASCII, ``\\n`` line endings)::

    DEDIPROG v1
    n1 n2 n12
    meta <type> <n> <alpha> <seed>      # optional
    <id> <class> <r> <p> <d>            # one per task, ids ascending

``class`` is 1, 2 or 12 (processor 1, processor 2, both).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO, List, Tuple, Union

import numpy as np

from .model import Instance, Meta, Proc, Task

HEADER = "DEDIPROG v1"
ALPHAS = (Fraction(1, 2), Fraction(1), Fraction(3, 2))
PROBLEM_TYPES = (1, 2, 3, 4, 5)

# Substream keys: one independent stream per drawn field.
_P_STREAM, _R_STREAM, _D_STREAM = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class GenSpec:
    problem_type: int
    n: int
    alpha: Fraction
    seed: int
    pmax: int = 50
    pmin: int = 0

    def __post_init__(self) -> None:
        if self.problem_type not in PROBLEM_TYPES:
            raise ValueError(f"problem type must be one of 1..5, got {self.problem_type}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not 0 <= self.pmin <= self.pmax:
            raise ValueError(f"need 0 <= pmin <= pmax, got {self.pmin}, {self.pmax}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


def class_counts(problem_type: int, n: int) -> Tuple[int, int, int]:
    """(n1, n2, n12) for one of the five problem types."""
    h = n // 2
    return {
        1: (n, h, h),
        2: (n, n, h),
        3: (n, h, n),
        4: (n, n, n),
        5: (h, h, n),
    }[problem_type]


def _stream(seed: int, key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(key,))))


def generate(spec: GenSpec) -> Instance:
    n1, n2, n12 = class_counts(spec.problem_type, spec.n)
    procs = [Proc.P1] * n1 + [Proc.P2] * n2 + [Proc.BOTH] * n12
    nb = len(procs)
    p = _stream(spec.seed, _P_STREAM).integers(spec.pmin, spec.pmax + 1, size=nb)
    # s1 + s2 + s12 is simply the total processing time.
    horizon = int(spec.alpha * int(p.sum()))
    r = _stream(spec.seed, _R_STREAM).integers(0, horizon + 1, size=nb)
    slack = _stream(spec.seed, _D_STREAM).integers(0, horizon + 1, size=nb)
    tasks = tuple(
        Task(j + 1, procs[j], int(r[j]), int(p[j]), int(r[j] + p[j] + slack[j]))
        for j in range(nb)
    )
    return Instance(tasks, Meta(spec.problem_type, spec.n, spec.alpha, spec.seed))


def format_alpha(alpha: Fraction) -> str:
    """Exact decimal rendering when one exists, ``p/q`` otherwise."""
    alpha = Fraction(alpha)
    for digits in range(0, 19):
        scaled = alpha * 10**digits
        if scaled.denominator == 1:
            if digits == 0:
                return f"{scaled.numerator}.0"
            q, rem = divmod(scaled.numerator, 10**digits)
            return f"{q}.{rem:0{digits}d}"
    return f"{alpha.numerator}/{alpha.denominator}"


def dumps(instance: Instance) -> str:
    lines = [HEADER, "{} {} {}".format(*instance.counts())]
    m = instance.meta
    if m is not None:
        lines.append(f"meta {m.problem_type} {m.n} {format_alpha(m.alpha)} {m.seed}")
    for t in instance.tasks:
        lines.append(f"{t.id} {int(t.proc)} {t.r} {t.p} {t.d}")
    return "\n".join(lines) + "\n"


def write(instance: Instance, sink: Union[str, Path, IO[str]]) -> None:
    text = dumps(instance)
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="ascii", newline="\n")
    else:
        sink.write(text)


def _ints(lineno: int, fields: List[str], what: str) -> List[int]:
    try:
        values = [int(f) for f in fields]
    except ValueError:
        raise ParseError(lineno, f"{what}: expected integers, got {' '.join(fields)!r}") from None
    if any(v < 0 for v in values):
        raise ParseError(lineno, f"{what}: negative field")
    return values


def loads(text: str) -> Instance:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(1, f"expected header {HEADER!r}")
    if len(lines) < 2:
        raise ParseError(2, "missing class-count line")
    counts_fields = lines[1].split()
    if len(counts_fields) != 3:
        raise ParseError(2, "expected 'n1 n2 n12'")
    counts = tuple(_ints(2, counts_fields, "class counts"))

    meta = None
    body_start = 2
    if len(lines) > 2 and lines[2].split()[:1] == ["meta"]:
        fields = lines[2].split()
        if len(fields) != 5:
            raise ParseError(3, "expected 'meta type n alpha seed'")
        ptype, n = _ints(3, fields[1:3], "meta")
        (seed,) = _ints(3, fields[4:5], "meta seed")
        try:
            alpha = Fraction(fields[3])
        except ValueError:
            raise ParseError(3, f"bad alpha {fields[3]!r}") from None
        meta = Meta(ptype, n, alpha, seed)
        body_start = 3

    tasks = []
    for k, line in enumerate(lines[body_start:], start=body_start + 1):
        fields = line.split()
        if len(fields) != 5:
            raise ParseError(k, "expected 'id class r p d'")
        tid, cls, r, p, d = _ints(k, fields, "task")
        if cls not in (1, 2, 12):
            raise ParseError(k, f"unknown class {cls}")
        if tid != len(tasks) + 1:
            if any(t.id == tid for t in tasks):
                raise ParseError(k, f"duplicate id {tid}")
            raise ParseError(k, f"expected id {len(tasks) + 1}, got {tid}")
        tasks.append(Task(tid, Proc(cls), r, p, d))
    if not tasks:
        raise ParseError(len(lines) + 1, "no tasks")
    instance = Instance(tuple(tasks), meta)
    if instance.counts() != counts:
        raise ParseError(2, f"class counts {counts} do not match tasks {instance.counts()}")
    return instance


def read(source: Union[str, Path, IO[str]]) -> Instance:
    if isinstance(source, (str, Path)):
        return loads(Path(source).read_text(encoding="ascii"))
    return loads(source.read())

