"""Circular gap spectra, three-gap checks, gap-family classification and
batch decomposition of coinciding points.

The gap spectrum of ``x_1, ..., x_N`` is taken on the sorted points with the
wrap-around gap ``1 - x_(N) + x_(1)`` included, so it always holds exactly
``N`` gaps.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import paircorr
from .generators import Kronecker, SequenceSpec, generate
from .torus import PointSet

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_LARGE_THRESHOLD",
    "GapSpectrum",
    "GapTrajectory",
    "BatchDecomposition",
    "circular_gaps",
    "gap_spectrum",
    "three_gap_check",
    "classify_gaps",
    "batch_decomposition",
    "divergence_witness",
]

DEFAULT_TOL = 1e-12
DEFAULT_LARGE_THRESHOLD = 100.0

LARGE, MEDIUM, ZERO, UNDETERMINED = "Large", "Medium", "Zero", "Undetermined"


@dataclass(frozen=True)
class GapSpectrum:
    n: int
    gaps: tuple
    counts: tuple
    merge_tolerance: float = DEFAULT_TOL

    @property
    def k(self) -> int:
        return len(self.gaps)

    def total_length(self) -> float:
        return float(sum(c * d for c, d in zip(self.counts, self.gaps)))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "gaps": list(self.gaps),
            "counts": list(self.counts),
            "merge_tolerance": self.merge_tolerance,
        }


def circular_gaps(points: PointSet) -> np.ndarray:
    """The N neighbour gaps of the sorted points, wrap gap last."""
    xs = points.sorted_values()
    return np.append(np.diff(xs), 1.0 - xs[-1] + xs[0])


def gap_spectrum(points: PointSet, merge_tolerance: float = DEFAULT_TOL) -> GapSpectrum:
    """Distinct gap lengths and their multiplicities.

    Sorted gaps closer than ``merge_tolerance`` to their predecessor are
    chained into one group; a group is reported by its smallest member.
    """
    merge_tolerance = float(merge_tolerance)
    if not merge_tolerance >= 0.0:
        raise ValueError(f"merge tolerance must be >= 0, got {merge_tolerance!r}")
    g = np.sort(circular_gaps(points))
    starts = np.flatnonzero(np.diff(g) > merge_tolerance) + 1
    starts = np.concatenate(([0], starts))
    counts = np.diff(np.append(starts, g.size))
    return GapSpectrum(
        points.n,
        tuple(float(v) for v in g[starts]),
        tuple(int(c) for c in counts),
        merge_tolerance,
    )


def three_gap_check(alpha: float, n_values: Sequence[int], merge_tolerance: float = DEFAULT_TOL) -> dict:
    """Gap counts of the Kronecker sequence {i * alpha} at each N.

    Returns ``{"alpha", "rows": [{"n", "k", "gaps", "counts"}], "violations"}``
    where ``violations`` lists every N with more than three distinct gaps.
    """
    if not len(n_values):
        raise ValueError("n_values is empty")
    rows, violations = [], []
    spec = Kronecker(float(alpha))
    for n in n_values:
        sp = gap_spectrum(generate(spec, n), merge_tolerance)
        rows.append({"n": int(n), "k": sp.k, "gaps": list(sp.gaps), "counts": list(sp.counts)})
        if sp.k > 3:
            violations.append(int(n))
    return {"alpha": float(alpha), "merge_tolerance": merge_tolerance,
            "rows": rows, "violations": violations}


# -- classification across N ------------------------------------------------

PointSource = SequenceSpec | Callable[[int], PointSet]


def _points_for(source: PointSource, n: int) -> PointSet:
    if callable(source):
        return source(n)
    return generate(source, n)


@dataclass(frozen=True)
class GapTrajectory:
    """Scaled gaps ``N * d_j`` tracked by rank ``j`` over increasing N.

    ``scaled[j]`` and ``gaps[j]`` hold ``None`` where rank ``j`` does not
    exist at that N. ``bounds`` maps each Medium rank to the largest
    observed ``N * d_j``, the finite-data stand-in for its upper constant.
    """

    n_values: tuple
    gaps: tuple
    scaled: tuple
    labels: tuple
    bounds: dict = field(default_factory=dict)
    large_threshold: float = DEFAULT_LARGE_THRESHOLD

    def to_dict(self) -> dict:
        return {
            "n_values": list(self.n_values),
            "gaps": [list(r) for r in self.gaps],
            "scaled": [list(r) for r in self.scaled],
            "labels": list(self.labels),
            "bounds": {str(k + 1): v for k, v in self.bounds.items()},
            "large_threshold": self.large_threshold,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "rank", "d", "N_times_d", "label"])
        for t, n in enumerate(self.n_values):
            for j, label in enumerate(self.labels):
                d = self.gaps[j][t]
                if d is None:
                    continue
                w.writerow([n, j + 1, f"{d:.17g}", f"{self.scaled[j][t]:.17g}", label])
        return buf.getvalue()


def _label(scaled: list, raw: list, large_threshold: float) -> str:
    if all(d == 0.0 for d in raw):
        return ZERO
    if all(0.0 < v <= large_threshold for v in scaled):
        return MEDIUM
    tail = scaled[len(scaled) // 2:]
    if scaled[-1] > large_threshold and all(b >= a for a, b in zip(tail, tail[1:])):
        return LARGE
    return UNDETERMINED


def classify_gaps(source: PointSource, n_values: Sequence[int],
                  merge_tolerance: float = DEFAULT_TOL,
                  large_threshold: float = DEFAULT_LARGE_THRESHOLD,
                  rank_match: str = "ByRank") -> GapTrajectory:
    """Label each gap family Large, Medium, Zero or Undetermined.

    Families are matched across N by their rank in the sorted spectrum.
    Ranks that do not exist at every N are labelled Undetermined. The
    Large/Medium split is a finite-N heuristic: Large needs ``N * d`` above
    ``large_threshold`` at the last N and non-decreasing over the last half
    of ``n_values``; Medium needs every ``N * d`` in ``(0, large_threshold]``.

    ``source`` is a :data:`SequenceSpec` or any callable ``n -> PointSet``,
    for constructions that are not prefixes of one sequence.
    """
    if rank_match != "ByRank":
        raise ValueError(f"unsupported rank matching {rank_match!r}")
    n_values = tuple(int(n) for n in n_values)
    if not n_values:
        raise ValueError("n_values is empty")
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("n_values must be strictly increasing")

    spectra = [gap_spectrum(_points_for(source, n), merge_tolerance) for n in n_values]
    kmax = max(sp.k for sp in spectra)
    gaps, scaled, labels, bounds = [], [], [], {}
    for j in range(kmax):
        raw = [sp.gaps[j] if j < sp.k else None for sp in spectra]
        sc = [None if d is None else n * d for n, d in zip(n_values, raw)]
        gaps.append(tuple(raw))
        scaled.append(tuple(sc))
        if any(d is None for d in raw):
            labels.append(UNDETERMINED)
            continue
        lab = _label(sc, raw, large_threshold)
        labels.append(lab)
        if lab == MEDIUM:
            bounds[j] = max(sc)
    return GapTrajectory(n_values, tuple(gaps), tuple(scaled), tuple(labels),
                         bounds, float(large_threshold))


# -- batches of coinciding points ---------------------------------------------


@dataclass(frozen=True)
class BatchDecomposition:
    """Maximal groups of exactly equal points.

    ``lower_bound = sum(size**2) / N - 1`` bounds R(s, N)/N from below for
    every s >= 0: all ordered pairs inside a batch sit at distance 0.
    ``pair_floor`` is the same bound as an integer count of ordered pairs.
    """

    batch_sizes: tuple
    n: int

    @property
    def pair_floor(self) -> int:
        return sum(b * b for b in self.batch_sizes) - self.n

    @property
    def lower_bound(self) -> float:
        return self.pair_floor / self.n

    def to_dict(self) -> dict:
        return {"n": self.n, "batches": len(self.batch_sizes),
                "batch_sizes": list(self.batch_sizes), "lower_bound": self.lower_bound}


def batch_decomposition(points: PointSet) -> BatchDecomposition:
    # exact equality on purpose: no tolerance for coincidence
    _, sizes = np.unique(points.points, return_counts=True)
    return BatchDecomposition(tuple(int(s) for s in sizes), points.n)


def divergence_witness(source: PointSource, n_values: Sequence[int], s: float) -> list:
    """R(s, N)/N next to the batch lower bound at each N.

    Each row carries ``holds``, the integer comparison
    ``R(s, N) >= sum |B_i|^2 - N``, so no rounding enters the verdict.
    """
    if not float(s) >= 0.0:
        raise ValueError("s must be >= 0")
    rows = []
    for n in n_values:
        pts = _points_for(source, int(n))
        r = paircorr.pair_count_fast(pts, s)
        b = batch_decomposition(pts)
        rows.append({
            "n": pts.n,
            "R_over_N": r / pts.n,
            "lower_bound": b.lower_bound,
            "batches": len(b.batch_sizes),
            "holds": r >= b.pair_floor,
        })
    return rows
