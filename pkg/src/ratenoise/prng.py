"""Deterministic pseudo-random streams with reproducible substreams.

The generator is SplitMix64 (Steele/Lea/Vigna counter-based mixer with the
usual published constants).  It is bit-stable across platforms, trivially
vectorisable, and statistically more than adequate for audio-band noise.
Every stream is a pure function of (seed, distribution, index), so the
first k values never depend on how many values are requested.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = ["Seed", "Distribution", "stream", "split"]

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

# 2**-53: maps the top 53 bits of a 64-bit word onto [0, 1).
_TO_UNIT = 1.0 / (1 << 53)


@dataclass(frozen=True)
class Seed:
    """64-bit unsigned seed; equal seeds give identical streams everywhere."""

    value: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", int(self.value) & _MASK64)


class Distribution(Enum):
    """Sample-value distributions for white noise.

    UNIFORM draws from [-1, 1) with variance 1/3.  TRIANGULAR3 is the sum of
    three consecutive uniform draws, variance 1, with a quadratic-B-spline
    shaped density that approximates a normal distribution.
    """

    UNIFORM = "uniform"
    TRIANGULAR3 = "triangular3"


def _mix64(z: int) -> int:
    """SplitMix64 output mixer on a plain Python integer."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return z ^ (z >> 31)


def _raw_words(seed: Seed, count: int) -> np.ndarray:
    """Words j=0..count-1 of the SplitMix64 stream, vectorised."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed.value) + idx * np.uint64(_GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_A)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_B)
    return z ^ (z >> np.uint64(31))


def _uniform_block(seed: Seed, count: int) -> np.ndarray:
    """Uniform [-1, 1) values from the top 53 bits of each raw word."""
    unit = (_raw_words(seed, count) >> np.uint64(11)).astype(np.float64) * _TO_UNIT
    return unit * 2.0 - 1.0


def stream(seed: Seed, dist: Distribution, n: int) -> np.ndarray:
    """First n values of the (seed, dist) stream.

    Deterministic and prefix-stable: for m <= n the first m values are the
    same array prefix.  TRIANGULAR3 value k is exactly the sum of uniform
    raw values 3k, 3k+1, 3k+2.
    """
    if n < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    if dist is Distribution.UNIFORM:
        return _uniform_block(seed, n)
    if dist is Distribution.TRIANGULAR3:
        return _uniform_block(seed, 3 * n).reshape(-1, 3).sum(axis=1)
    raise ValueError(f"unknown distribution {dist!r}")


def split(seed: Seed, index: int) -> Seed:
    """Derived seed for substream `index`.

    Defined as the SplitMix64 advance of (seed XOR golden-ratio-scrambled
    index), so distinct indices give statistically independent streams and
    the derivation itself is reproducible.
    """
    scrambled = (int(index) * _GOLDEN) & _MASK64
    return Seed(_mix64(((seed.value ^ scrambled) + _GOLDEN) & _MASK64))
