"""Direct discrete S-transform of uniformly sampled data.

Used as the ground-truth spectrogram for evenly sampled versions of the test
signals. Evaluation is the literal O(N * n_tau * n_f) sum; N is at most a few
thousand here.
"""

from __future__ import annotations

import numpy as np

from .core import FrequencyGrid, Spectrogram, TimeGrid
from .engine import normalize_power
from .errors import NonUniformInput, ValidationError

UNIFORM_RTOL = 1e-9


def check_uniform(times) -> float:
    """Return the sample spacing, or raise if epochs are not evenly spaced."""
    t = np.asarray(times, float)
    if t.size < 2:
        raise ValidationError("need at least 2 samples")
    d = np.diff(t)
    step = (t[-1] - t[0]) / (t.size - 1)
    if not step > 0 or np.max(np.abs(d - step)) > UNIFORM_RTOL * step:
        raise NonUniformInput("samples are not uniformly spaced")
    return float(step)


def stransform_complex(values, sample_rate, freqs, taus, t0=0.0) -> np.ndarray:
    """Complex S(tau, f), shape ``(len(taus), len(freqs))``.

    ``S = dt * sum_n x_n |f|/sqrt(2 pi) exp(-(t_n - tau)^2 f^2 / 2) exp(-2 pi i f t_n)``
    with ``t_n = t0 + n / sample_rate``.
    """
    x = np.asarray(values, float)
    dt = 1.0 / float(sample_rate)
    t = t0 + dt * np.arange(x.size)
    freqs = np.asarray(freqs, float)
    taus = np.asarray(taus, float)
    af = np.abs(freqs)
    # (n_f, N) Fourier kernel applied once; the Gaussian depends on tau
    xk = x * np.exp(-2j * np.pi * np.multiply.outer(freqs, t))
    out = np.empty((taus.size, freqs.size), dtype=complex)
    norm = dt * af / np.sqrt(2.0 * np.pi)
    for j, tau in enumerate(taus):
        g = np.exp(-0.5 * np.multiply.outer(af, t - tau) ** 2)
        out[j] = norm * (g * xk).sum(axis=-1)
    return out


def stransform(
    uniform_values,
    sample_rate,
    freq_grid: FrequencyGrid,
    time_grid: TimeGrid,
    t0=0.0,
    normalize="global-max",
) -> Spectrogram:
    """Power spectrogram ``|S|^2``, optionally rescaled to unit maximum."""
    s = stransform_complex(uniform_values, sample_rate, freq_grid.values, time_grid.values, t0)
    power = np.abs(s) ** 2
    valid = np.ones(power.shape, dtype=bool)
    meta = {"method": "stransform", "sample_rate": float(sample_rate), "t0": float(t0)}
    spec = Spectrogram(time_grid, freq_grid, power, valid, meta)
    return normalize_power(spec, normalize)


def stransform_series(times, values, freq_grid, time_grid, normalize="global-max") -> Spectrogram:
    """S-transform of evenly spaced ``(times, values)``; checks the spacing."""
    step = check_uniform(times)
    return stransform(values, 1.0 / step, freq_grid, time_grid, t0=float(times[0]), normalize=normalize)
