"""Non-uniform Stockwell transform for unevenly sampled time series.

A localized generalized Lomb-Scargle fit is evaluated on a time-frequency grid
with a Gaussian window whose width shrinks with frequency and with the local
sampling density.

>>> from nust import synth, nust_spectrogram, NustConfig, frequency_grid, default_time_grid
>>> series = synth.sample_nonuniform(synth.signal1(), 200, seed=0)
>>> spec = nust_spectrogram(NustConfig(bandwidth=20.0), series,
...                         default_time_grid(series, 50), frequency_grid(0.02, 0.3, 60))
>>> spec.shape
(50, 60)
"""

from . import synth
from .core import (
    FrequencyGrid,
    Periodogram,
    Spectrogram,
    TimeGrid,
    TimeSeries,
    default_time_grid,
    frequency_grid,
    linspace_grid,
    make_time_series,
    time_grid,
)
from .density import DensityEstimate, kde_build, kde_eval, silverman_bandwidth
from .engine import normalize_power, nust_cell, nust_spectrogram
from .gls import FitResult, gls_periodogram, weighted_sine_fit
from .stransform import stransform, stransform_complex, stransform_series
from .window import NustConfig, adaptive_sigma, window_weights

__all__ = [
    "DensityEstimate",
    "FitResult",
    "FrequencyGrid",
    "NustConfig",
    "Periodogram",
    "Spectrogram",
    "TimeGrid",
    "TimeSeries",
    "adaptive_sigma",
    "default_time_grid",
    "frequency_grid",
    "gls_periodogram",
    "kde_build",
    "kde_eval",
    "linspace_grid",
    "make_time_series",
    "normalize_power",
    "nust_cell",
    "nust_spectrogram",
    "silverman_bandwidth",
    "stransform",
    "stransform_complex",
    "stransform_series",
    "synth",
    "time_grid",
    "weighted_sine_fit",
    "window_weights",
]
