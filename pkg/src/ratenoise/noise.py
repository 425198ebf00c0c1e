"""White noise generators.

`white_noise` scales sample variance proportionally to the sampling rate so
renders of the same configuration stay comparable across rates; the knob is
the voltage spectral density (V*sqrt(s)), optionally expressed as a target
stddev at a reference rate.  `white_noise_legacy` is the conventional
fixed-amplitude generator whose filtered loudness drifts with the rate; it
exists as the baseline the comparability harness shows failing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DiscreteSignal
from .prng import Distribution, Seed, stream

__all__ = ["NoiseSpec", "white_noise", "white_noise_legacy"]

# Uniform [-1, 1) draws have variance 1/3; multiplying by sqrt(3) makes the
# population stddev exactly the requested one.  TRIANGULAR3 already has
# variance 1.
_UNIT_SCALE = {
    Distribution.UNIFORM: math.sqrt(3.0),
    Distribution.TRIANGULAR3: 1.0,
}


@dataclass(frozen=True)
class NoiseSpec:
    """Amplitude of rate-aware noise as a voltage spectral density.

    vsd has unit V*sqrt(s); a render at rate r has population stddev
    vsd * sqrt(r).  The (stddev y at reference rate f) parametrisation is
    the same thing via vsd = y / sqrt(f) and is canonicalised on
    construction, so both forms generate bit-identical signals.
    """

    vsd: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.vsd) or self.vsd < 0.0:
            raise ValueError(f"vsd must be finite and >= 0, got {self.vsd}")
        object.__setattr__(self, "vsd", float(self.vsd))

    @classmethod
    def from_reference(cls, stddev_v: float, reference_hz: float) -> "NoiseSpec":
        """Spec for noise with population stddev `stddev_v` at `reference_hz`."""
        if not reference_hz > 0.0:
            raise ValueError(f"reference rate must be positive, got {reference_hz}")
        if stddev_v < 0.0:
            raise ValueError(f"reference stddev must be >= 0, got {stddev_v}")
        return cls(stddev_v / math.sqrt(reference_hz))

    def stddev_at(self, rate_hz: float) -> float:
        """Population stddev of a render at the given rate, in volts."""
        return self.vsd * math.sqrt(rate_hz)


def _sample_count(duration_s: float, rate_hz: float) -> int:
    if duration_s < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration_s}")
    # Nearest integer, ties to even, so e.g. 50 ms at 11025 Hz is 551 samples.
    return round(duration_s * rate_hz)


def white_noise(
    spec: NoiseSpec,
    rate_hz: float,
    duration_s: float,
    seed: Seed,
    dist: Distribution = Distribution.UNIFORM,
) -> DiscreteSignal:
    """Rate-aware white noise: zero mean, population stddev vsd * sqrt(rate).

    Deterministic in (seed, dist).  The same seed at a different rate gives a
    different sample sequence; comparability across rates is statistical.
    """
    n = _sample_count(duration_s, rate_hz)
    scale = spec.stddev_at(rate_hz) * _UNIT_SCALE[dist]
    return DiscreteSignal(rate_hz, stream(seed, dist, n) * scale)


def white_noise_legacy(
    amplitude_v: float,
    rate_hz: float,
    duration_s: float,
    seed: Seed,
) -> DiscreteSignal:
    """Fixed-amplitude uniform noise in [-amplitude, amplitude].

    Population stddev is amplitude / sqrt(3) at every rate, which is exactly
    why filtered renders of it come out louder at lower rates.
    """
    if amplitude_v < 0.0:
        raise ValueError(f"amplitude must be >= 0, got {amplitude_v}")
    n = _sample_count(duration_s, rate_hz)
    return DiscreteSignal(rate_hz, stream(seed, Distribution.UNIFORM, n) * amplitude_v)
