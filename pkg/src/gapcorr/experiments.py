"""Convergence studies of R(s, N)/N against a target curve."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .generators import (GOLDEN, SQRT2_MINUS_1, FromFile, Kronecker, RootSequence,
                         SequenceSpec, UniformRandom, VanDerCorput, generate)
from .paircorr import PairCorrelationCurve, pair_correlation_curve, pair_count_fast

__all__ = [
    "DEFAULT_S_GRID",
    "ExperimentConfig",
    "DeviationReport",
    "poissonian_deviation",
    "curve_deviation",
    "convergence_report",
    "limit_nonexistence_probe",
    "spec_from_dict",
    "spec_to_dict",
]

DEFAULT_S_GRID = tuple(round(0.1 * i, 10) for i in range(1, 51))

POISSONIAN = "Poissonian"


def poissonian_deviation(curve: PairCorrelationCurve) -> float:
    """Largest |R(s, N)/N - 2s| over the curve's grid."""
    return curve_deviation(curve, [2.0 * s for s in curve.s_grid])


def curve_deviation(curve: PairCorrelationCurve, reference) -> float:
    ref = np.asarray(reference, dtype=np.float64)
    if ref.shape != (len(curve.values),):
        raise ValueError("reference curve does not match the grid")
    return float(np.max(np.abs(np.asarray(curve.values) - ref)))


@dataclass(frozen=True)
class ExperimentConfig:
    """One convergence study.

    ``target`` is ``"Poissonian"``, ``None`` (record curves only), or a
    sequence of reference values aligned with ``s_grid``.
    """

    spec: SequenceSpec
    n_values: tuple
    s_grid: tuple = DEFAULT_S_GRID
    target: object = POISSONIAN
    output: str | None = None

    def __post_init__(self):
        nv = tuple(int(n) for n in self.n_values)
        grid = tuple(float(s) for s in self.s_grid)
        for name, seq in (("n_values", nv), ("s_grid", grid)):
            if not seq:
                raise ValueError(f"{name} is empty")
            if any(b <= a for a, b in zip(seq, seq[1:])):
                raise ValueError(f"{name} must be strictly increasing")
        if nv[0] < 1 or grid[0] < 0:
            raise ValueError("n_values must be >= 1 and s_grid >= 0")
        target = self.target
        if target is not None and not (isinstance(target, str) and target == POISSONIAN):
            target = tuple(float(v) for v in target)
            if len(target) != len(grid):
                raise ValueError("reference curve length differs from s_grid")
        object.__setattr__(self, "n_values", nv)
        object.__setattr__(self, "s_grid", grid)
        object.__setattr__(self, "target", target)

    def reference(self):
        if self.target is None:
            return None
        if isinstance(self.target, str):
            return [2.0 * s for s in self.s_grid]
        return list(self.target)

    def to_dict(self) -> dict:
        return {
            "spec": spec_to_dict(self.spec),
            "n_values": list(self.n_values),
            "s_grid": list(self.s_grid),
            "target": self.target if not isinstance(self.target, tuple) else {"curve": list(self.target)},
            "output": self.output,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        target = d.get("target", POISSONIAN)
        if isinstance(target, dict):
            target = target["curve"]
        elif target not in (None, POISSONIAN):
            raise ValueError(f"unknown target {target!r}")
        return cls(
            spec=spec_from_dict(d["spec"]),
            n_values=d["n_values"],
            s_grid=d.get("s_grid", DEFAULT_S_GRID),
            target=target,
            output=d.get("output"),
        )

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class DeviationReport:
    config: ExperimentConfig
    trend: tuple  # (N, deviation or None)
    curves: tuple = field(default=(), repr=False)

    @property
    def deviations(self) -> dict:
        return {n: d for n, d in self.trend}

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "rows": [{"N": n, "deviation": d} for n, d in self.trend],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "deviation"])
        for n, d in self.trend:
            w.writerow([n, "" if d is None else f"{d:.17g}"])
        return buf.getvalue()

    def write(self, prefix) -> list:
        """Write ``<prefix>.json``, ``<prefix>.csv`` and one curve CSV per N."""
        written = []
        for suffix, text in ((".json", self.to_json()), (".csv", self.to_csv())):
            path = f"{prefix}{suffix}"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            written.append(path)
        for curve in self.curves:
            path = f"{prefix}.curve_N{curve.n}.csv"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(curve.to_csv())
            written.append(path)
        return written


def convergence_report(config: ExperimentConfig) -> DeviationReport:
    """Curves at every N of the config, with their sup-distance to the target."""
    ref = config.reference()
    # prefix property: one generation at the largest N serves every N
    full = generate(config.spec, config.n_values[-1])
    trend, curves = [], []
    for n in config.n_values:
        curve = pair_correlation_curve(full.prefix(n), config.s_grid)
        curves.append(curve)
        trend.append((n, None if ref is None else curve_deviation(curve, ref)))
    return DeviationReport(config, tuple(trend), tuple(curves))


def limit_nonexistence_probe(spec, s: float, n_values: Sequence[int]) -> list:
    """Raw (N, R(s, N)/N) pairs at a fixed ``s``; no convergence verdict."""
    if not float(s) >= 0.0:
        raise ValueError("s must be >= 0")
    rows = []
    for n in n_values:
        pts = spec(int(n)) if callable(spec) else generate(spec, int(n))
        rows.append((pts.n, pair_count_fast(pts, s) / pts.n))
    return rows


# -- JSON rendering of sequence specs -----------------------------------------


def spec_to_dict(spec: SequenceSpec) -> dict:
    if isinstance(spec, Kronecker):
        return {"family": "kronecker", "alpha": spec.alpha}
    if isinstance(spec, VanDerCorput):
        return {"family": "vdc", "base": spec.base}
    if isinstance(spec, RootSequence):
        return {"family": "root"}
    if isinstance(spec, UniformRandom):
        return {"family": "random", "seed": spec.seed}
    if isinstance(spec, FromFile):
        return {"family": "file", "path": str(spec.path)}
    raise TypeError(f"unknown sequence spec {spec!r}")


ALPHA_ALIASES = {"golden": GOLDEN, "sqrt2m1": SQRT2_MINUS_1}


def parse_alpha(value) -> float:
    if isinstance(value, str):
        key = value.strip().lower()
        if key in ALPHA_ALIASES:
            return ALPHA_ALIASES[key]
        return float(key)
    return float(value)


def spec_from_dict(d: dict) -> SequenceSpec:
    family = str(d.get("family", "")).lower()
    if family == "kronecker":
        return Kronecker(parse_alpha(d["alpha"]))
    if family in ("vdc", "vandercorput"):
        return VanDerCorput(int(d.get("base", 2)))
    if family == "root":
        return RootSequence()
    if family in ("random", "uniform"):
        return UniformRandom(int(d.get("seed", 0)))
    if family == "file":
        return FromFile(d["path"])
    raise ValueError(f"unknown sequence family {family!r}")
