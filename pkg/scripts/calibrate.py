#!/usr/bin/env python3
"""Calibrate the statistical tolerances used by the test suite.

Writes tests/fixtures/calibration.json. Regenerate with

    python scripts/calibrate.py

Every run is deterministic (SplitMix64 seeds), so rerunning reproduces the
committed fixture exactly.
"""

import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from gapcorr import (GOLDEN, SQRT2_MINUS_1, ExperimentConfig, Kronecker, RootSequence,
                     UniformRandom, VanDerCorput, convergence_report, generate,
                     limit_nonexistence_probe, pair_correlation_curve, poissonian_deviation)
from gapcorr.gaps import circular_gaps
from gapcorr.generators import uniform_random

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "calibration.json"

SEEDS = list(range(1, 21))
COARSE_GRID = [0.5 * i for i in range(1, 11)]
DECADES = [1000, 10000, 100000]
ALPHA_SEED = 2024
FIBONACCI = [89, 144, 233, 377, 610, 987, 1597, 2584, 4181, 6765]


def random_alphas(count=100, seed=ALPHA_SEED):
    return [float(a) for a in uniform_random(seed, count)]


def poissonian_tolerance():
    devs = [poissonian_deviation(pair_correlation_curve(generate(UniformRandom(s), 100000),
                                                        COARSE_GRID)) for s in SEEDS]
    tol = 0.1
    return {
        "seeds": SEEDS,
        "n": 100000,
        "s_grid": COARSE_GRID,
        "deviations": devs,
        "max_deviation": max(devs),
        "tolerance": tol,
        "passing_seeds": sum(d <= tol for d in devs),
        "required_passing": 19,
    }


def uniform_trend():
    rows = []
    for s in SEEDS:
        rep = convergence_report(ExperimentConfig(UniformRandom(s), DECADES))
        d = [dev for _, dev in rep.trend]
        rows.append({"seed": s, "deviations": d,
                     "non_increasing": all(b <= a for a, b in zip(d, d[1:]))})
    return {"n_values": DECADES, "rows": rows,
            "non_increasing_count": sum(r["non_increasing"] for r in rows), "required": 18}


def kronecker_witness():
    rep = convergence_report(ExperimentConfig(Kronecker(GOLDEN), DECADES))
    devs = [d for _, d in rep.trend]
    # half the smallest observed deviation, rounded down to one decimal
    floor = math.floor(10 * 0.5 * min(devs)) / 10
    return {"alpha": GOLDEN, "n_values": DECADES, "deviations": devs,
            "min_deviation": floor, "rule": "floor(10 * min(deviations) / 2) / 10"}


def root_trend():
    rep = convergence_report(ExperimentConfig(RootSequence(), DECADES))
    return {"n_values": DECADES, "deviations": [d for _, d in rep.trend]}


def fibonacci_probe():
    mids = [(a + b) // 2 for a, b in zip(FIBONACCI, FIBONACCI[1:])]
    ns = sorted(FIBONACCI + mids)
    rows = limit_nonexistence_probe(Kronecker(GOLDEN), 1.0, ns)
    vals = [v for _, v in rows]
    return {"n_values": ns, "values": vals, "spread": max(vals) - min(vals), "required_spread": 0.2}


def three_gap_margins():
    """How far apart distinct gaps are, versus float noise inside a gap class."""
    alphas = [GOLDEN, SQRT2_MINUS_1, math.pi - 3] + random_alphas()
    min_separation, max_spread = math.inf, 0.0
    for a in alphas:
        for n in (10, 100, 1000, 10000):
            g = np.sort(circular_gaps(generate(Kronecker(a), n)))
            jumps = np.diff(g)
            big = jumps[jumps > 1e-12]
            small = jumps[jumps <= 1e-12]
            if big.size:
                min_separation = min(min_separation, float(big.min()))
            if small.size:
                max_spread = max(max_spread, float(small.max()))
    return {"alpha_seed": ALPHA_SEED, "alphas": len(alphas),
            "min_separation_between_classes": min_separation,
            "max_jump_within_class": max_spread, "tolerance": 1e-12}


def vdc_margin():
    ks = [len(set(np.diff(np.append(np.sort(x := generate(VanDerCorput(2), n).points), 1 + x.min())).tolist()))
          for n in range(1, 10001)]
    return {"base": 2, "n_max": 10000, "max_k": max(ks)}


def main():
    t0 = time.time()
    result = {
        "command": "python scripts/calibrate.py",
        "poissonian": poissonian_tolerance(),
        "uniform_trend": uniform_trend(),
        "kronecker_witness": kronecker_witness(),
        "root_trend": root_trend(),
        "fibonacci_probe": fibonacci_probe(),
        "three_gap": three_gap_margins(),
        "vdc": vdc_margin(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(result, indent=2) + "\n")
    print(f"wrote {OUT} in {time.time() - t0:.1f}s", file=sys.stderr)
    for key in ("poissonian", "kronecker_witness", "three_gap", "vdc"):
        summary = {k: v for k, v in result[key].items() if not isinstance(v, list)}
        print(key, summary)


if __name__ == "__main__":
    main()
