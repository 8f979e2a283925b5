"""Pareto dominance and exact three-objective hypervolume (minimisation)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Sequence, Tuple, TypeVar

Point3 = Tuple[Rational, Rational, Rational]
P = TypeVar("P", bound=Sequence)


class UndefinedRatioError(ZeroDivisionError):
    pass


def dominates(a: Sequence, b: Sequence) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    strict = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            strict = True
    return strict


def pareto_filter(points: Iterable[P]) -> List[P]:
    """Non-dominated subset; exact duplicates keep their first occurrence only."""
    unique = {}
    for p in points:
        unique.setdefault(tuple(p), p)
    # In lexicographic order a point can only be dominated by an earlier one,
    # and any dominator is itself dominated by (or equal to) a kept point.
    kept: List[tuple] = []
    for key in sorted(unique):
        if not any(dominates(f, key) for f in kept):
            kept.append(key)
    keep = set(kept)
    return [p for key, p in unique.items() if key in keep]


def _area2(points: List[Tuple[Rational, Rational]], rx: Rational, ry: Rational) -> Rational:
    """Area dominated by 2-D points inside the box bounded by (rx, ry)."""
    area: Rational = 0
    best_y = ry
    pts = sorted(points)
    for k, (x, y) in enumerate(pts):
        if y < best_y:
            best_y = y
        nx = pts[k + 1][0] if k + 1 < len(pts) else rx
        area += (nx - x) * (ry - best_y)
    return area


def hypervolume3(front: Iterable[Sequence[Rational]], ref: Sequence[Rational]) -> Rational:
    """Exact volume of the union of boxes ``[p, ref]`` over the front.

    Sweeps the third objective: between consecutive distinct z values the
    cross-section is the 2-D dominated area of every point seen so far.

    Raises:
        ValueError: if some point exceeds ``ref`` in any coordinate.
    """
    rx, ry, rz = ref
    pts = [tuple(p) for p in front]
    for p in pts:
        if p[0] > rx or p[1] > ry or p[2] > rz:
            raise ValueError(f"point {p} lies outside reference point {tuple(ref)}")
    pts.sort(key=lambda p: p[2])
    volume: Rational = 0
    active: List[Tuple[Rational, Rational]] = []
    for k, (x, y, z) in enumerate(pts):
        active.append((x, y))
        nz = pts[k + 1][2] if k + 1 < len(pts) else rz
        if nz > z:
            volume += _area2(active, rx, ry) * (nz - z)
    return volume


def hv_ratio(hv_alg: Rational, hv_lb: Rational) -> Fraction:
    """``1 - (hv_lb - hv_alg) / hv_lb``.

    Raises:
        UndefinedRatioError: if ``hv_lb`` is zero.
    """
    if hv_lb == 0:
        raise UndefinedRatioError("lower-bound hypervolume is zero; HV ratio undefined")
    return 1 - (Fraction(hv_lb) - Fraction(hv_alg)) / Fraction(hv_lb)


def reference_point(initial_sets: Iterable[Iterable[Sequence[Rational]]]) -> Point3:
    """Coordinate-wise worst value over every point of every initial set."""
    pts = [tuple(p) for s in initial_sets for p in s]
    if not pts:
        raise ValueError("reference point needs at least one point")
    return tuple(max(p[k] for p in pts) for k in range(3))  # type: ignore[return-value]
