"""Deterministic signal processors: averaging, lowpass filters, oscillator,
and the running integral used by the impulse modulator.

All parameters are physical (seconds, Hz, volts); each function derives its
per-sample coefficients from the signal's own rate, which is what keeps the
processors usable at any sampling rate.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import lfilter

from .core import DiscreteSignal

__all__ = [
    "moving_average",
    "first_order_lowpass",
    "state_variable_lowpass",
    "sine_oscillator",
    "integrate",
]


def moving_average(signal: DiscreteSignal, window_s: float) -> DiscreteSignal:
    """Arithmetic mean over a sliding window of w = round(window * rate) samples.

    Output sample k is the mean of input samples k .. k+w-1, so the result is
    shorter by w - 1 samples; no edge padding is applied.
    """
    w = round(window_s * signal.rate_hz)
    if w < 1:
        raise ValueError(
            f"window of {window_s} s is shorter than one sample period at {signal.rate_hz} Hz"
        )
    if len(signal) < w:
        raise ValueError(f"signal of {len(signal)} samples is shorter than the window ({w})")
    if w == 1:
        return signal
    out = np.convolve(signal.samples, np.full(w, 1.0 / w), mode="valid")
    return signal.with_samples(out)


def _check_band(freq_hz: float, rate_hz: float, limit: float, what: str) -> None:
    if not 0.0 < freq_hz < rate_hz / limit:
        raise ValueError(
            f"{what} must lie in (0, rate/{limit:g}) = (0, {rate_hz / limit:g}) Hz, got {freq_hz}"
        )


def first_order_lowpass(signal: DiscreteSignal, cutoff_hz: float) -> DiscreteSignal:
    """One-pole lowpass with unity DC gain.

    Recursion y[k] = a*y[k-1] + (1-a)*x[k] with a = exp(-2*pi*cutoff/rate)
    and zero initial state.
    """
    _check_band(cutoff_hz, signal.rate_hz, 2.0, "cutoff")
    a = math.exp(-2.0 * math.pi * cutoff_hz / signal.rate_hz)
    out = lfilter([1.0 - a], [1.0, -a], signal.samples)
    return signal.with_samples(out)


def state_variable_lowpass(
    signal: DiscreteSignal, resonance_hz: float, q: float
) -> DiscreteSignal:
    """Lowpass tap of the two-integrator state-variable filter.

    Per sample, with f1 = 2*sin(pi*resonance/rate) and damping 1/q:

        low  += f1 * band
        high  = x - low - band / q
        band += f1 * high

    States start at zero.  The resonance < rate/6 bound keeps this
    discretisation stable.
    """
    _check_band(resonance_hz, signal.rate_hz, 6.0, "resonance")
    if q < 0.5:
        raise ValueError(f"q must be >= 0.5, got {q}")
    f1 = 2.0 * math.sin(math.pi * resonance_hz / signal.rate_hz)
    low = 0.0
    band = 0.0
    out = [0.0] * len(signal)
    for k, x in enumerate(signal.samples.tolist()):
        low += f1 * band
        high = x - low - band / q
        band += f1 * high
        out[k] = low
    return signal.with_samples(out)


def sine_oscillator(
    freq_hz: float,
    amplitude_v: float,
    rate_hz: float,
    duration_s: float,
    phase_rad: float = 0.0,
) -> DiscreteSignal:
    """Sampled sine wave: amplitude * sin(2*pi*freq*k/rate + phase)."""
    _check_band(freq_hz, rate_hz, 2.0, "frequency")
    if duration_s < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration_s}")
    n = round(duration_s * rate_hz)
    k = np.arange(n, dtype=np.float64)
    return DiscreteSignal(
        rate_hz, amplitude_v * np.sin(2.0 * math.pi * freq_hz / rate_hz * k + phase_rad)
    )


def integrate(signal: DiscreteSignal) -> DiscreteSignal:
    """Running integral (cumulative sum divided by the rate), unit V*s.

    The final value estimates the integral over the whole duration; its
    statistics for rate-aware noise do not depend on the sampling rate.
    """
    return signal.with_samples(np.cumsum(signal.samples) / signal.rate_hz)
