"""Random impulse (click) generation from noise.

`threshold_clicks` is the naive comparator method: cheap, but its threshold
has to change with the sampling rate, which is the trap it is kept around to
demonstrate.  `delta_sigma` is the integrate-and-fire modulator: it emits
impulses whose area always equals the threshold, so impulse frequency and
randomness carry over between sampling rates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DiscreteSignal

__all__ = ["DeltaSigmaState", "threshold_clicks", "delta_sigma", "delta_sigma_scan"]


def threshold_clicks(
    noise: DiscreteSignal, target_freq_hz: float, noise_amplitude_v: float
) -> DiscreteSignal:
    """Comparator click generator over uniform noise in [-amplitude, amplitude].

    Emits a height-1 sample wherever |noise| <= amplitude * f / rate, giving
    an expected `target_freq_hz` impulses per second.  Both the uniformity
    assumption and the rate-dependent threshold are inherent flaws of the
    method; prefer `delta_sigma`.
    """
    if not 0.0 < target_freq_hz < noise.rate_hz:
        raise ValueError(
            f"target frequency must lie in (0, rate) = (0, {noise.rate_hz:g}) Hz, "
            f"got {target_freq_hz}"
        )
    window = noise_amplitude_v * target_freq_hz / noise.rate_hz
    out = np.where(np.abs(noise.samples) <= window, 1.0, 0.0)
    return noise.with_samples(out)


@dataclass(frozen=True)
class DeltaSigmaState:
    """Integrator accumulator (V*s) and the one-sample-delayed feedback (V)."""

    accumulator: float = 0.0
    previous_output: float = 0.0


def delta_sigma_scan(
    signal: DiscreteSignal,
    threshold_vs: float,
    state: DeltaSigmaState = DeltaSigmaState(),
) -> tuple[DiscreteSignal, DeltaSigmaState]:
    """One pass of the modulator, returning the impulse train and final state.

    Per sample, in order: subtract the previous output, integrate, compare.
    An impulse has height rate * threshold, hence area exactly equal to the
    threshold, which is what resets the accumulator through the feedback.
    The comparison is strict (accumulator > threshold).
    """
    if not threshold_vs > 0.0:
        raise ValueError(f"threshold must be positive, got {threshold_vs}")
    rate = signal.rate_hz
    height = rate * threshold_vs
    acc = state.accumulator
    prev = state.previous_output
    out = [0.0] * len(signal)
    for k, x in enumerate(signal.samples.tolist()):
        acc += (x - prev) / rate
        if acc > threshold_vs:
            prev = height
            out[k] = height
        else:
            prev = 0.0
    return signal.with_samples(out), DeltaSigmaState(acc, prev)


def delta_sigma(signal: DiscreteSignal, threshold_vs: float) -> DiscreteSignal:
    """Impulse train from the modulator started with a cleared accumulator."""
    out, _ = delta_sigma_scan(signal, threshold_vs)
    return out
