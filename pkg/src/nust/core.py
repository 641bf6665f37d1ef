"""Shared domain types: time series, uniform grids, periodograms, spectrograms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import (
    BadRange,
    CountTooSmall,
    EmptyInput,
    LengthMismatch,
    NonFinite,
    NonMonotonic,
    NonPositiveUncertainty,
)


def _frozen(a, dtype=float):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Non-uniformly sampled measurements ``(t_i, y_i, sigma_i)``.

    Build through :func:`make_time_series`, which sorts and validates.
    ``uncertainties`` is always populated; missing errors become ones.
    """

    times: np.ndarray
    values: np.ndarray
    uncertainties: np.ndarray

    def __len__(self):
        return self.times.size

    @property
    def weights(self) -> np.ndarray:
        """Measurement weights ``1 / sigma_i**2``."""
        return 1.0 / self.uncertainties**2

    @property
    def span(self) -> float:
        return float(self.times[-1] - self.times[0])

    def with_values(self, values, uncertainties=None) -> "TimeSeries":
        return make_time_series(
            self.times,
            values,
            self.uncertainties if uncertainties is None else uncertainties,
        )


def make_time_series(times, values, uncertainties=None) -> TimeSeries:
    t = np.asarray(times, dtype=float).ravel()
    y = np.asarray(values, dtype=float).ravel()
    if t.size == 0:
        raise EmptyInput("time series needs at least one sample")
    if y.size != t.size:
        raise LengthMismatch(f"{t.size} times but {y.size} values")
    if uncertainties is None:
        s = np.ones_like(t)
    else:
        s = np.asarray(uncertainties, dtype=float).ravel()
        if s.size != t.size:
            raise LengthMismatch(f"{t.size} times but {s.size} uncertainties")
    for name, arr in (("times", t), ("values", y), ("uncertainties", s)):
        if not np.all(np.isfinite(arr)):
            raise NonFinite(f"{name} contain NaN or Inf")
    if np.any(s <= 0):
        raise NonPositiveUncertainty("uncertainties must be > 0")

    order = np.argsort(t, kind="stable")
    t, y, s = t[order], y[order], s[order]
    if t.size > 1 and np.any(np.diff(t) <= 0):
        dup = t[1:][np.diff(t) <= 0][0]
        raise NonMonotonic(f"duplicate epoch {dup!r}")
    return TimeSeries(_frozen(t), _frozen(y), _frozen(s))


def linspace_grid(lo, hi, count) -> np.ndarray:
    """Uniform grid with bit-exact endpoints."""
    lo = float(lo)
    hi = float(hi)
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise BadRange(f"need finite min < max, got [{lo}, {hi}]")
    if int(count) != count or count < 2:
        raise CountTooSmall(f"grid needs at least 2 points, got {count}")
    values = np.linspace(lo, hi, int(count))
    values[0] = lo
    values[-1] = hi
    if np.any(np.diff(values) <= 0):
        raise BadRange(f"[{lo}, {hi}] too narrow for {count} distinct points")
    return values


@dataclass(frozen=True, eq=False)
class Grid:
    start: float
    stop: float
    count: int
    values: np.ndarray = field(repr=False)

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.count - 1)

    def __len__(self):
        return self.count

    def nearest_index(self, x) -> int:
        return int(np.argmin(np.abs(self.values - x)))


class FrequencyGrid(Grid):
    pass


class TimeGrid(Grid):
    pass


def frequency_grid(f_min, f_max, count) -> FrequencyGrid:
    """Uniform frequency grid in cycles/day; ``f_min`` must be positive."""
    if not float(f_min) > 0:
        raise BadRange(f"f_min must be > 0, got {f_min}")
    values = linspace_grid(f_min, f_max, count)
    return FrequencyGrid(float(f_min), float(f_max), int(count), _frozen(values))


def time_grid(tau_min, tau_max, count) -> TimeGrid:
    values = linspace_grid(tau_min, tau_max, count)
    return TimeGrid(float(tau_min), float(tau_max), int(count), _frozen(values))


def default_time_grid(series: TimeSeries, count) -> TimeGrid:
    """Analysis epochs spanning the data support ``[t_1, t_N]``."""
    return time_grid(series.times[0], series.times[-1], count)


@dataclass(frozen=True, eq=False)
class Periodogram:
    grid: FrequencyGrid
    power: np.ndarray

    def peak(self) -> tuple[float, float]:
        """Frequency and power of the highest peak."""
        k = int(np.argmax(self.power))
        return float(self.grid.values[k]), float(self.power[k])


@dataclass(frozen=True, eq=False)
class Spectrogram:
    """Power on a ``(tau, f)`` grid, rows indexed by time.

    Cells where ``valid`` is False hold exactly zero power. ``meta`` records
    the settings that produced the matrix (method name plus parameters).
    """

    time_grid: TimeGrid
    freq_grid: FrequencyGrid
    power: np.ndarray
    valid: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def shape(self):
        return self.power.shape

    def row(self, f) -> np.ndarray:
        """Power versus time at the grid frequency nearest ``f``."""
        return self.power[:, self.freq_grid.nearest_index(f)]

    def equals(self, other: "Spectrogram") -> bool:
        return (
            np.array_equal(self.time_grid.values, other.time_grid.values)
            and np.array_equal(self.freq_grid.values, other.freq_grid.values)
            and np.array_equal(self.power, other.power)
            and np.array_equal(self.valid, other.valid)
            and self.meta == other.meta
        )
