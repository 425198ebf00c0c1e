"""Time quantisation: holding a signal constant over fixed periods.

The period must be an integral number of sample intervals.  `quantise_hold`
repeats the first sample of each block (sample-and-hold); it inherits the
input's per-sample variance, so on rate-aware noise its amplitude grows with
sqrt(rate).  `quantise_average` holds each block's mean instead, which makes
the amplitude depend only on the period: stddev = vsd / sqrt(period).

Blocks are aligned to sample index 0; this is an offline renderer, so the
one-period delay that averaging would cost a real-time system does not
apply.
"""

from __future__ import annotations

import math

import numpy as np

from .core import DiscreteSignal, downsample_average, upsample_constant

__all__ = ["period_in_samples", "quantise_hold", "quantise_average"]

# Relative slack when checking that period * rate is an integer; covers the
# rounding of periods written as expressions like 25 / 11025.
_INTEGRAL_RTOL = 1e-9


def period_in_samples(rate_hz: float, period_s: float) -> int:
    """Quantisation period as a whole number of samples, or ValueError.

    Rejects non-integral periods instead of silently rounding, naming the
    nearest representable periods in the message.
    """
    d_real = period_s * rate_hz
    d = round(d_real)
    if d < 1 or not math.isclose(d_real, d, rel_tol=_INTEGRAL_RTOL, abs_tol=_INTEGRAL_RTOL):
        lo = max(1, math.floor(d_real))
        hi = max(lo + 1, math.ceil(d_real))
        raise ValueError(
            f"period {period_s} s is {d_real:g} sample intervals at {rate_hz:g} Hz, "
            f"not an integer; nearest valid periods are {lo / rate_hz!r} s and "
            f"{hi / rate_hz!r} s"
        )
    return d


def quantise_hold(signal: DiscreteSignal, period_s: float) -> DiscreteSignal:
    """Sample-and-hold: output[k] = input[k - (k mod d)].  Length preserved."""
    d = period_in_samples(signal.rate_hz, period_s)
    if len(signal) < 1:
        raise ValueError("cannot quantise an empty signal")
    if d == 1:
        return signal
    held = np.repeat(signal.samples[::d], d)[: len(signal)]
    return signal.with_samples(held)


def quantise_average(signal: DiscreteSignal, period_s: float) -> DiscreteSignal:
    """Hold each block's mean over the period.

    Exactly upsample_constant(downsample_average(signal, d), d); a trailing
    partial block is dropped, so the length is the largest multiple of d.
    """
    d = period_in_samples(signal.rate_hz, period_s)
    usable = len(signal) - (len(signal) % d)
    if usable == 0:
        raise ValueError(f"signal of {len(signal)} samples is shorter than one period ({d})")
    trimmed = signal if usable == len(signal) else signal.with_samples(signal.samples[:usable])
    return upsample_constant(downsample_average(trimmed, d), d)
