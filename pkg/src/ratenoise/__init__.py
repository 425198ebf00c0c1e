"""Sampling-rate-aware white noise.

Generators whose sample variance grows proportionally to the sampling rate,
the processors that interact with such noise (filters, time quantisers, the
integrate-and-fire impulse modulator), spectral estimators for verifying the
amplitude laws, and a harness that checks renders for comparability across
sampling rates.
"""

from .core import DiscreteSignal, downsample_average, rms, upsample_constant
from .prng import Distribution, Seed, split, stream
from .noise import NoiseSpec, white_noise, white_noise_legacy
from .filters import (
    first_order_lowpass,
    integrate,
    moving_average,
    sine_oscillator,
    state_variable_lowpass,
)
from .quantise import quantise_average, quantise_hold
from .impulse import DeltaSigmaState, delta_sigma, delta_sigma_scan, threshold_clicks
from .spectral import (
    Autocovariance,
    Spectrum,
    autocovariance,
    dft,
    dft_direct,
    ensemble_spectrum_stddev,
    magnitude_spectrum,
    noise_spectral_density,
    octave_band_means,
)
from .harness import (
    ComparabilityReport,
    ImpulseNoise,
    LegacyNoise,
    LowpassNoise,
    MetricResult,
    Panpipe,
    QuantisedNoise,
    RateAwareNoise,
    ResonantNoise,
    build_pipeline,
    check_comparability,
    render,
    reproduce_noise_figure,
)

__version__ = "0.1.0"

__all__ = [
    "DiscreteSignal",
    "downsample_average",
    "rms",
    "upsample_constant",
    "Distribution",
    "Seed",
    "split",
    "stream",
    "NoiseSpec",
    "white_noise",
    "white_noise_legacy",
    "first_order_lowpass",
    "integrate",
    "moving_average",
    "sine_oscillator",
    "state_variable_lowpass",
    "quantise_average",
    "quantise_hold",
    "DeltaSigmaState",
    "delta_sigma",
    "delta_sigma_scan",
    "threshold_clicks",
    "Autocovariance",
    "Spectrum",
    "autocovariance",
    "dft",
    "dft_direct",
    "ensemble_spectrum_stddev",
    "magnitude_spectrum",
    "noise_spectral_density",
    "octave_band_means",
    "ComparabilityReport",
    "ImpulseNoise",
    "LegacyNoise",
    "LowpassNoise",
    "MetricResult",
    "Panpipe",
    "QuantisedNoise",
    "RateAwareNoise",
    "ResonantNoise",
    "build_pipeline",
    "check_comparability",
    "render",
    "reproduce_noise_figure",
]
