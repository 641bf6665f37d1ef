"""Frequency- and density-adaptive Gaussian analysis windows.

The window standard deviation is ``alpha / (f * rho(tau)**gamma)``, capped at
``sigma_cap``; each sample's weight is its measurement weight times the
Gaussian window, cut to exactly zero beyond ``truncation_k`` deviations.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .core import TimeSeries
from .errors import BadConfig


@dataclass(frozen=True)
class NustConfig:
    """Hyperparameters and numerical guards.

    ``bandwidth=None`` selects Silverman's rule and ``sigma_cap=None`` the
    observation span; both are resolved against a series by :meth:`resolve`.
    """

    alpha: float = 0.18
    gamma: float = 0.5
    bandwidth: float | None = None
    sigma_cap: float | None = None
    truncation_k: float = 5.0
    min_ess: float = 4.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise BadConfig(f"alpha must be > 0, got {self.alpha}")
        if not self.gamma >= 0:
            raise BadConfig(f"gamma must be >= 0, got {self.gamma}")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise BadConfig(f"bandwidth must be > 0, got {self.bandwidth}")
        if self.sigma_cap is not None and not self.sigma_cap > 0:
            raise BadConfig(f"sigma_cap must be > 0, got {self.sigma_cap}")
        if not self.truncation_k >= 3:
            raise BadConfig(f"truncation_k must be >= 3, got {self.truncation_k}")
        if not self.min_ess >= 3:
            raise BadConfig(f"min_ess must be >= 3, got {self.min_ess}")

    def resolve(self, series: TimeSeries) -> "NustConfig":
        """Fill in automatic bandwidth and cap for ``series``."""
        from .density import silverman_bandwidth

        h = self.bandwidth if self.bandwidth is not None else silverman_bandwidth(series.times)
        cap = self.sigma_cap
        if cap is None:
            # a single sample has zero span; any positive cap gives the same fits
            cap = series.span if series.span > 0 else 1.0
        return NustConfig(self.alpha, self.gamma, float(h), float(cap), self.truncation_k, self.min_ess)

    def as_dict(self) -> dict:
        return asdict(self)


def adaptive_sigma(config: NustConfig, density_at_tau, f):
    """Window standard deviation in days; broadcasts over ``density_at_tau`` and ``f``."""
    cap = np.inf if config.sigma_cap is None else config.sigma_cap
    rho = np.asarray(density_at_tau, float)
    f = np.asarray(f, float)
    denom = np.abs(f) * rho**config.gamma
    with np.errstate(divide="ignore", over="ignore"):
        sigma = np.where(denom > 0, config.alpha / np.where(denom > 0, denom, 1.0), np.inf)
    sigma = np.minimum(sigma, cap)
    if sigma.ndim == 0:
        return float(sigma)
    return sigma


def gaussian_window(times, tau, sigma, truncation_k=None):
    """``exp(-(t - tau)**2 / (2 sigma**2))``; zero beyond ``truncation_k * sigma``.

    ``sigma`` may be an array, in which case the window is returned with shape
    ``sigma.shape + times.shape``.
    """
    t = np.asarray(times, float)
    sigma = np.asarray(sigma, float)[..., None]
    d = t - tau
    g = np.exp(-0.5 * (d / sigma) ** 2)
    if truncation_k is not None:
        g = np.where(np.abs(d) <= truncation_k * sigma, g, 0.0)
    return g


def window_weights(config: NustConfig, series: TimeSeries, density, tau, f):
    """Combined weights at ``(tau, f)``; returns ``(weights, sigma)``.

    ``density`` is either a :class:`~nust.density.DensityEstimate` or the
    already evaluated ``rho(tau)``.
    """
    rho = density(tau) if callable(density) else float(density)
    sigma = adaptive_sigma(config, rho, f)
    g = gaussian_window(series.times, tau, sigma, config.truncation_k)
    return series.weights * g, sigma
