"""Sequence families on the circle.

Every family is indexed from 1 and has the prefix property: the first ``n``
points do not depend on how many are requested.

Random points come from SplitMix64 (Steele, Lea & Flood 2014) used as a
counter-based generator, so streams are reproducible in any language::

    z  = seed + i * 0x9E3779B97F4A7C15          (mod 2**64), i = 1, 2, ...
    z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9    (mod 2**64)
    z  = (z ^ (z >> 27)) * 0x94D049BB133111EB    (mod 2**64)
    z  =  z ^ (z >> 31)
    x_i = (z >> 11) * 2**-53

``seed`` is taken modulo 2**64, so negative 64-bit seeds are accepted.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .torus import PointSet, read_points, reduce_array_mod_1

__all__ = [
    "Kronecker",
    "VanDerCorput",
    "RootSequence",
    "UniformRandom",
    "FromFile",
    "SequenceSpec",
    "generate",
    "radical_inverse",
    "nth_non_square",
    "kronecker_points",
    "splitmix64",
    "GOLDEN",
    "SQRT2_MINUS_1",
]

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
SQRT2_MINUS_1 = math.sqrt(2.0) - 1.0

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class Kronecker:
    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ValueError("Kronecker alpha must be finite")

    def describe(self):
        return f"kronecker(alpha={self.alpha!r})"


@dataclass(frozen=True)
class VanDerCorput:
    base: int = 2

    def __post_init__(self):
        if int(self.base) != self.base or self.base < 2:
            raise ValueError(f"van der Corput base must be an integer >= 2, got {self.base!r}")

    def describe(self):
        return f"vdc(base={self.base})"


@dataclass(frozen=True)
class RootSequence:
    def describe(self):
        return "root"


@dataclass(frozen=True)
class UniformRandom:
    seed: int = 0

    def describe(self):
        return f"random(seed={self.seed})"


@dataclass(frozen=True)
class FromFile:
    path: str

    def describe(self):
        return f"file({os.fspath(self.path)})"


SequenceSpec = Kronecker | VanDerCorput | RootSequence | UniformRandom | FromFile


def splitmix64(seed: int, n: int) -> np.ndarray:
    """The first ``n`` SplitMix64 outputs for ``seed`` as uint64."""
    i = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed % 2**64) + i * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def uniform_random(seed: int, n: int) -> np.ndarray:
    z = splitmix64(seed, n)
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def radical_inverse(i, base: int = 2) -> np.ndarray:
    """Digit reversal of the integers ``i`` about the radix point."""
    i = np.array(i, dtype=np.int64, ndmin=1)
    out = np.zeros(i.shape, dtype=np.float64)
    scale = 1.0 / base
    while np.any(i):
        i, digit = np.divmod(i, base)
        out += digit * scale
        scale /= base
    return out


def nth_non_square(k) -> np.ndarray:
    """The k-th positive integer that is not a perfect square (k >= 1).

    Closed form ``k + round(sqrt(k))``; exact for k < 2**52.
    """
    k = np.array(k, dtype=np.int64, ndmin=1)
    r = _isqrt(k)
    # round(sqrt(k)) = r + 1 exactly when k > r*(r+1)
    return k + r + (k > r * (r + 1))


def _isqrt(m: np.ndarray) -> np.ndarray:
    r = np.floor(np.sqrt(m.astype(np.float64))).astype(np.int64)
    r -= r * r > m
    r += (r + 1) * (r + 1) <= m
    return r


def kronecker_points(alpha: float, n: int) -> np.ndarray:
    """{i * alpha} for i = 1..n, accurate to about one ulp of 1.

    ``alpha`` is split into two 26-bit halves so each product with an index
    below 2**26 is exact; only the final addition rounds. A plain
    ``i * alpha`` loses ``log2(i)`` bits, enough to blur gap lengths at
    moderate N.
    """
    i = np.arange(1, n + 1, dtype=np.float64)
    alpha -= math.floor(alpha)  # exact; i * floor(alpha) is an integer
    if n >= 2**26:
        return reduce_array_mod_1(i * alpha)
    c = 134217729.0 * alpha  # Veltkamp split constant 2**27 + 1
    hi = c - (c - alpha)
    lo = alpha - hi
    a = i * hi
    a -= np.floor(a)
    return reduce_array_mod_1(a + i * lo)


def _root_points(n: int) -> np.ndarray:
    m = nth_non_square(np.arange(1, n + 1))
    return reduce_array_mod_1(np.sqrt(m.astype(np.float64)) - _isqrt(m))


def generate(spec: SequenceSpec, n: int) -> PointSet:
    """First ``n`` terms of the sequence described by ``spec``."""
    n = int(n)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    label = spec.describe()
    if isinstance(spec, Kronecker):
        pts = kronecker_points(float(spec.alpha), n)
    elif isinstance(spec, VanDerCorput):
        pts = radical_inverse(np.arange(1, n + 1), int(spec.base))
    elif isinstance(spec, RootSequence):
        pts = _root_points(n)
    elif isinstance(spec, UniformRandom):
        pts = uniform_random(int(spec.seed), n)
    elif isinstance(spec, FromFile):
        full = read_points(spec.path, label)
        if full.n < n:
            raise ValueError(f"{spec.path}: holds {full.n} points, {n} requested")
        return full.prefix(n)
    else:
        raise TypeError(f"unknown sequence spec {spec!r}")
    return PointSet(pts, label)
