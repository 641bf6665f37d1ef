"""Gaussian kernel density estimate of the sampling density."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TimeSeries
from .errors import NonPositiveBandwidth

_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def silverman_bandwidth(times) -> float:
    """Rule-of-thumb bandwidth ``1.06 * s * N**(-1/5)``, ``s`` the sample std."""
    t = np.asarray(times, float)
    if t.size < 2:
        raise NonPositiveBandwidth("cannot infer a bandwidth from fewer than 2 epochs")
    s = float(np.std(t, ddof=1))
    if not s > 0:
        raise NonPositiveBandwidth("epochs have zero spread")
    return 1.06 * s * t.size ** (-0.2)


@dataclass(frozen=True, eq=False)
class DensityEstimate:
    """Sampling density ``rho(t)`` in 1/days; integrates to one over the real line."""

    bandwidth: float
    sample_times: np.ndarray

    def __call__(self, t):
        return kde_eval(self, t)


def kde_build(series: TimeSeries | np.ndarray, bandwidth=None) -> DensityEstimate:
    times = series.times if isinstance(series, TimeSeries) else np.asarray(series, float)
    if bandwidth is None:
        h = silverman_bandwidth(times)
    else:
        h = float(bandwidth)
        if not (h > 0 and np.isfinite(h)):
            raise NonPositiveBandwidth(f"bandwidth must be a positive number, got {bandwidth}")
    return DensityEstimate(h, times)


def kde_eval(estimate: DensityEstimate, t):
    """Evaluate the full N-term kernel sum at ``t`` (scalar or array).

    Densities far outside the data underflow to exactly zero.
    """
    t = np.asarray(t, float)
    h = estimate.bandwidth
    ti = estimate.sample_times
    u = (t[..., None] - ti) / h
    rho = np.exp(-0.5 * u * u).sum(axis=-1) * (_INV_SQRT_2PI / (ti.size * h))
    if rho.ndim == 0:
        return float(rho)
    return rho
