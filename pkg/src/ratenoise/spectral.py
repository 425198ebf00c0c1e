"""Spectral estimators under the 1/rate transform normalisation.

The transform used throughout is

    coeff[k] = (1/rate) * sum_j x[j] * exp(+2*pi*i*j*k/n)

so coefficients have unit V*s and, for white noise, a per-bin variance of
n * stddev^2 / rate^2 regardless of where the energy sits.  The positive
exponent and 1/rate factor are unusual; `dft_direct` keeps the literal
definition around as the oracle that pins sign and scale.

The noise power spectral density is the transform of the (symmetrised)
autocovariance estimate; for rate-aware white noise it is flat with value
vsd^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.fft import next_fast_len

from .core import DiscreteSignal
from .noise import NoiseSpec, white_noise
from .prng import Distribution, Seed, split

__all__ = [
    "Spectrum",
    "Autocovariance",
    "dft",
    "dft_direct",
    "magnitude_spectrum",
    "autocovariance",
    "noise_spectral_density",
    "ensemble_spectrum_stddev",
    "octave_band_means",
]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Complex transform coefficients (V*s) with their frequency grid."""

    rate_hz: float
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coefficients, dtype=np.complex128).copy()
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    def __len__(self) -> int:
        return self.coefficients.size

    def __repr__(self) -> str:
        return f"Spectrum(rate_hz={self.rate_hz:g}, n={len(self)})"

    @property
    def bin_width_hz(self) -> float:
        """Frequency resolution 1/duration = rate/length."""
        return self.rate_hz / len(self)

    @property
    def frequencies_hz(self) -> np.ndarray:
        return np.arange(len(self)) * self.bin_width_hz


@dataclass(frozen=True, eq=False)
class Autocovariance:
    """Autocovariance estimate values[d] for lags d = 0..max_lag, unit V^2."""

    rate_hz: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64).copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def max_lag(self) -> int:
        return self.values.size - 1


def _require_nonempty(signal: DiscreteSignal) -> None:
    if len(signal) == 0:
        raise ValueError("spectral analysis of an empty signal is undefined")


def dft(signal: DiscreteSignal) -> Spectrum:
    """Transform with positive exponent and 1/rate normalisation.

    Computed by FFT; identical (to rounding) to `dft_direct`.
    """
    _require_nonempty(signal)
    n = len(signal)
    coeffs = np.fft.ifft(signal.samples) * (n / signal.rate_hz)
    return Spectrum(signal.rate_hz, coeffs)


def dft_direct(signal: DiscreteSignal) -> Spectrum:
    """Literal evaluation of the transform definition, bin by bin.

    O(n^2); exists as the oracle for `dft`, guarding the sign and scale
    conventions against drift.
    """
    _require_nonempty(signal)
    n = len(signal)
    j = np.arange(n)
    coeffs = np.empty(n, dtype=np.complex128)
    for k in range(n):
        coeffs[k] = np.sum(signal.samples * np.exp(2j * math.pi * (j * k % n) / n))
    return Spectrum(signal.rate_hz, coeffs / signal.rate_hz)


def magnitude_spectrum(signal: DiscreteSignal) -> tuple[np.ndarray, np.ndarray]:
    """One-sided magnitudes |coeff[k]| with their frequencies in Hz."""
    spec = dft(signal)
    half = len(spec) // 2 + 1
    return spec.frequencies_hz[:half], np.abs(spec.coefficients[:half])


def autocovariance(signal: DiscreteSignal, max_lag: int) -> Autocovariance:
    """Biased estimator values[d] = (1/n) * sum_k x[k] * x[k+d].

    FFT-based; agrees with the direct sum to rounding.
    """
    _require_nonempty(signal)
    n = len(signal)
    if not 0 <= max_lag < n:
        raise ValueError(f"max_lag must lie in [0, {n}), got {max_lag}")
    m = next_fast_len(2 * n)
    spec = np.fft.rfft(signal.samples, m)
    corr = np.fft.irfft(spec * np.conj(spec), m)[: max_lag + 1]
    return Autocovariance(signal.rate_hz, corr / n)


def noise_spectral_density(signal: DiscreteSignal, max_lag: int | None = None) -> Spectrum:
    """Spectrum of the symmetrised autocovariance estimate, unit V^2*s.

    The default lag window is n // 10.  Symmetrising (values at lag -d equal
    values at +d) keeps the density real; imaginary parts of the result are
    rounding noise.
    """
    _require_nonempty(signal)
    if max_lag is None:
        max_lag = max(1, len(signal) // 10)
    acov = autocovariance(signal, max_lag).values
    symmetric = np.concatenate([acov, acov[-1:0:-1]])
    return dft(DiscreteSignal(signal.rate_hz, symmetric))


def ensemble_spectrum_stddev(
    spec: NoiseSpec,
    rate_hz: float,
    length: int,
    trials: int,
    bin_index: int,
    seed: Seed,
    dist: Distribution = Distribution.UNIFORM,
) -> float:
    """Per-bin coefficient stddev over independently seeded noise renders.

    Real and imaginary parts are pooled (their variances add up to the
    complex coefficient's total variance), so for white noise the result
    estimates sqrt(length) * stddev / rate = sqrt(duration) * vsd.
    """
    if trials < 2:
        raise ValueError(f"need at least 2 trials, got {trials}")
    if not 0 <= bin_index < length:
        raise ValueError(f"bin index must lie in [0, {length}), got {bin_index}")
    values = np.empty(trials, dtype=np.complex128)
    duration_s = length / rate_hz
    for t in range(trials):
        sig = white_noise(spec, rate_hz, duration_s, split(seed, t), dist)
        values[t] = dft(sig).coefficients[bin_index]
    return float(np.sqrt(np.var(values.real, ddof=1) + np.var(values.imag, ddof=1)))


def octave_band_means(spectrum: Spectrum) -> tuple[np.ndarray, np.ndarray]:
    """Mean density per octave band over the one-sided bins, excluding DC.

    Bands cover bin ranges [1, 2), [2, 4), [4, 8), ... up to the folding bin.
    Returns (band centre frequencies, band means of the real part).
    """
    half = len(spectrum) // 2 + 1
    values = spectrum.coefficients.real[:half]
    centres = []
    means = []
    lo = 1
    while lo < half:
        hi = min(2 * lo, half)
        centres.append(math.sqrt(lo * max(hi - 1, lo)) * spectrum.bin_width_hz)
        means.append(float(np.mean(values[lo:hi])))
        lo = hi
    return np.asarray(centres), np.asarray(means)
