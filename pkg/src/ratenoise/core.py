"""Discrete signal container and the integer-factor resampling primitives.

A signal is a finite sequence of voltage samples tagged with its sampling
rate.  Downsampling is block averaging (lowpass then decimate), upsampling
is constant interpolation; these are the projections used by the cross-rate
comparability checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DiscreteSignal",
    "upsample_constant",
    "downsample_average",
    "rms",
]


def _as_sample_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"samples must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("samples must all be finite")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteSignal:
    """Finite sequence of samples in volts at a fixed sampling rate in Hz.

    Samples are stored as read-only float64; instances are immutable and
    safe to share between threads.
    """

    rate_hz: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        rate = float(self.rate_hz)
        if not np.isfinite(rate) or rate <= 0.0:
            raise ValueError(f"sampling rate must be positive and finite, got {self.rate_hz}")
        object.__setattr__(self, "rate_hz", rate)
        object.__setattr__(self, "samples", _as_sample_array(self.samples))

    def __len__(self) -> int:
        return self.samples.size

    def __repr__(self) -> str:
        return f"DiscreteSignal(rate_hz={self.rate_hz:g}, n={len(self)})"

    @property
    def duration_s(self) -> float:
        """Signal length in seconds: sample count divided by the rate."""
        return len(self) / self.rate_hz

    def with_samples(self, samples) -> "DiscreteSignal":
        """Same rate, new sample data."""
        return DiscreteSignal(self.rate_hz, samples)


def _check_factor(factor: int) -> int:
    if not isinstance(factor, (int, np.integer)) or isinstance(factor, bool):
        raise TypeError(f"resampling factor must be an integer, got {factor!r}")
    if factor < 1:
        raise ValueError(f"resampling factor must be >= 1, got {factor}")
    return int(factor)


def upsample_constant(signal: DiscreteSignal, factor: int) -> DiscreteSignal:
    """Raise the rate by an integer factor, replicating each sample.

    Output sample k equals input sample floor(k / factor); the duration is
    unchanged and the RMS is preserved exactly.
    """
    factor = _check_factor(factor)
    if factor == 1:
        return signal
    return DiscreteSignal(signal.rate_hz * factor, np.repeat(signal.samples, factor))


def downsample_average(signal: DiscreteSignal, factor: int) -> DiscreteSignal:
    """Lower the rate by an integer factor, averaging each block of samples.

    Block averaging is the moving-average lowpass that makes decimation act
    as a projection; a trailing partial block is dropped, never padded.
    """
    factor = _check_factor(factor)
    if factor == 1:
        return signal
    usable = len(signal) - (len(signal) % factor)
    blocks = signal.samples[:usable].reshape(-1, factor)
    # Mean relative to the block's first value: exact on constant blocks, so
    # downsampling inverts constant upsampling bit-for-bit at any factor.
    first = blocks[:, :1]
    means = first[:, 0] + (blocks - first).mean(axis=1)
    return DiscreteSignal(signal.rate_hz / factor, means)


def rms(signal: DiscreteSignal) -> float:
    """Root mean square of the samples, in volts.  Rejects empty signals."""
    if len(signal) == 0:
        raise ValueError("rms of an empty signal is undefined")
    return float(np.sqrt(np.mean(np.square(signal.samples))))
