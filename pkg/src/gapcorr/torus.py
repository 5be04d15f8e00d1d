"""Points on the circle R/Z and the nearest-integer metric.

Positions are stored as binary doubles in [0, 1). A :class:`PointSet` is a
multiset: duplicates are kept, order is kept, and nothing is sorted until a
statistic needs it.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

__all__ = [
    "TorusPoint",
    "PointSet",
    "reduce_mod_1",
    "reduce_array_mod_1",
    "torus_distance",
    "parse_points",
    "read_points",
    "write_points",
    "format_points",
]


def reduce_mod_1(x: float) -> "TorusPoint":
    """Fractional part of ``x`` as a :class:`TorusPoint`.

    >>> reduce_mod_1(-0.25).value
    0.75
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot reduce non-finite value {x!r} mod 1")
    r = x - math.floor(x)
    # x slightly below an integer can round up to exactly 1.0
    if r >= 1.0:
        r = 0.0
    return TorusPoint(r)


def reduce_array_mod_1(x) -> np.ndarray:
    """Vectorised :func:`reduce_mod_1` returning a float64 array."""
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise ValueError("cannot reduce non-finite values mod 1")
    r = x - np.floor(x)
    r[r >= 1.0] = 0.0
    return r


def torus_distance(a, b) -> float:
    """Distance to the nearest integer of ``a - b``; always in [0, 1/2]."""
    a = a.value if isinstance(a, TorusPoint) else float(a)
    b = b.value if isinstance(b, TorusPoint) else float(b)
    d = abs(a - b)
    return min(d, 1.0 - d)


@dataclass(frozen=True, order=True)
class TorusPoint:
    value: float

    def __post_init__(self):
        v = float(self.value)
        if not (0.0 <= v < 1.0):
            raise ValueError(f"torus point must lie in [0, 1), got {v!r}")
        object.__setattr__(self, "value", v)

    def __float__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class PointSet:
    """Finite ordered multiset of points in [0, 1).

    Parameters
    ----------
    points : array_like
        Positions. Must already lie in [0, 1); use :meth:`from_reals` to
        reduce arbitrary reals.
    label : str
        Free-form provenance, carried into reports.
    """

    points: np.ndarray
    label: str = ""
    _sorted: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        raw = self.points
        if isinstance(raw, np.ndarray):
            pts = np.array(raw, dtype=np.float64).ravel()
        else:
            pts = np.fromiter((float(p) for p in raw), dtype=np.float64)
        if pts.size < 1:
            raise ValueError("a point set needs at least one point")
        if not np.all((pts >= 0.0) & (pts < 1.0)):
            bad = pts[~((pts >= 0.0) & (pts < 1.0))][0]
            raise ValueError(f"point {bad!r} outside [0, 1)")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_reals(cls, values: Iterable[float], label: str = "") -> "PointSet":
        return cls(reduce_array_mod_1(np.fromiter(values, dtype=np.float64)), label)

    @property
    def n(self) -> int:
        return int(self.points.size)

    def __len__(self):
        return self.n

    def __iter__(self):
        return (TorusPoint(v) for v in self.points)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return np.array_equal(self.points, other.points)

    def __hash__(self):
        return hash(self.points.tobytes())

    def sorted_values(self) -> np.ndarray:
        # cached; the array is read-only so sharing it across threads is safe
        if not self._sorted:
            s = np.sort(self.points, kind="stable")
            s.setflags(write=False)
            self._sorted.append(s)
        return self._sorted[0]

    def shifted(self, c: float) -> "PointSet":
        """All points translated by ``c`` modulo 1."""
        return PointSet(reduce_array_mod_1(self.points + float(c)), self.label)

    def reflected(self) -> "PointSet":
        """The image under x -> -x (mod 1)."""
        return PointSet(reduce_array_mod_1(-self.points), self.label)

    def prefix(self, n: int) -> "PointSet":
        if not 1 <= n <= self.n:
            raise ValueError(f"prefix length {n} out of range 1..{self.n}")
        return PointSet(self.points[:n], self.label)


# -- plain-text format: one decimal per line, '#' comments ------------------


def format_points(points: PointSet) -> str:
    # repr() is the shortest string that round-trips a double exactly
    lines = [f"# {points.label}"] if points.label else []
    lines.extend(repr(float(v)) for v in points.points)
    return "\n".join(lines) + "\n"


def write_points(points: PointSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_points(points))


def parse_points(text: str, label: str = "") -> PointSet:
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            v = float(line)
        except ValueError:
            raise ValueError(f"line {lineno}: not a number: {line!r}") from None
        if not (0.0 <= v < 1.0):
            raise ValueError(f"line {lineno}: value {v!r} outside [0, 1)")
        values.append(v)
    if not values:
        raise ValueError("point file contains no values")
    return PointSet(np.asarray(values, dtype=np.float64), label)


def read_points(path, label: str | None = None) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_points(text, label if label is not None else f"file:{os.fspath(path)}")
