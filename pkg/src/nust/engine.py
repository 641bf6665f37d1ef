"""Grid evaluation of the non-uniform Stockwell transform.

Every ``(tau, f)`` cell is an independent localized GLS fit whose weights come
from the adaptive window. The density is evaluated once per analysis epoch
and the trigonometric basis once per frequency; rows (fixed ``tau``) are the
unit of work handed to the thread pool and are always computed by the same
code path, so the output does not depend on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .core import FrequencyGrid, Spectrogram, TimeGrid, TimeSeries
from .density import DensityEstimate, kde_build
from .errors import UnknownMode
from .gls import basis, fit_batch
from .window import NustConfig, adaptive_sigma, gaussian_window

NORMALIZE_MODES = ("none", "global-max")


def _row(config, series, rho, tau, freqs, cos, sin):
    sigma = adaptive_sigma(config, rho, freqs)
    w = series.weights * gaussian_window(series.times, tau, sigma, config.truncation_k)
    empty = ~(w.sum(axis=-1) > 0)
    if np.any(empty):
        w = np.where(empty[:, None], 1.0, w)
    out = fit_batch(cos, sin, series.values, w)
    valid = ~empty & ~out["singular"] & (out["ess"] >= config.min_ess)
    power = np.where(valid, out["power"], 0.0)
    ess = np.where(empty, 0.0, out["ess"])
    return power, ess, valid


def nust_cell(config: NustConfig, series: TimeSeries, density: DensityEstimate, tau, f):
    """Power, effective sample size and validity for a single cell."""
    config = config.resolve(series)
    cos, sin = basis(series.times, [f])
    power, ess, valid = _row(config, series, density(tau), float(tau), np.array([float(f)]), cos, sin)
    return float(power[0]), float(ess[0]), bool(valid[0])


def nust_spectrogram(
    config: NustConfig,
    series: TimeSeries,
    time_grid: TimeGrid,
    freq_grid: FrequencyGrid,
    workers: int = 1,
) -> Spectrogram:
    """Evaluate every cell of the ``(tau, f)`` grid.

    ``workers > 1`` spreads analysis epochs over a thread pool; results are
    placed by index and are bitwise identical to a serial run.
    """
    config = config.resolve(series)
    density = kde_build(series, config.bandwidth)
    taus = time_grid.values
    rho = density(taus)
    freqs = freq_grid.values
    cos, sin = basis(series.times, freqs)

    shape = (taus.size, freqs.size)
    power = np.zeros(shape)
    valid = np.zeros(shape, dtype=bool)

    def work(j):
        p, _, v = _row(config, series, rho[j], taus[j], freqs, cos, sin)
        power[j] = p
        valid[j] = v

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, range(taus.size)))
    else:
        for j in range(taus.size):
            work(j)

    meta = {"method": "nust", **config.as_dict()}
    return Spectrogram(time_grid, freq_grid, power, valid, meta)


def normalize_power(spec: Spectrogram, mode: str = "global-max") -> Spectrogram:
    """Rescale valid powers so the largest becomes one (``global-max``)."""
    if mode not in NORMALIZE_MODES:
        raise UnknownMode(f"unknown normalization {mode!r}; expected one of {NORMALIZE_MODES}")
    if mode == "none":
        return spec
    vmax = spec.power[spec.valid].max() if spec.valid.any() else 0.0
    if not vmax > 0:
        return spec
    power = np.where(spec.valid, spec.power / vmax, 0.0)
    return Spectrogram(spec.time_grid, spec.freq_grid, power, spec.valid.copy(), {**spec.meta, "normalize": mode})
