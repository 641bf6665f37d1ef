"""Synthetic test signals, random non-uniform sampling and noise injection.

The four benchmark signals are transient/gated tones and a linear chirp in
cycles/day over a span of days. Durations are not tied to any source value:
Signals 1 and 4 run to 250 d and 240 d (a centred gap), Signals 2 and 3 to
200 d.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import TimeSeries, make_time_series
from .errors import BadSwitchTimes, NonPositiveSnr, ValidationError


@dataclass(frozen=True)
class Component:
    """One gated sinusoid or linear chirp, active on ``[t_on, t_off]``.

    Phase is zero at ``phase_ref`` (defaults to ``t_on``).
    """

    f_start: float
    amplitude: float
    t_on: float
    t_off: float
    f_end: float | None = None
    kind: str = "tone"
    phase_ref: float | None = None

    def __post_init__(self):
        if self.f_end is None:
            object.__setattr__(self, "f_end", self.f_start)
        if self.kind == "tone" and self.f_end != self.f_start:
            raise ValidationError("tone components need f_end == f_start")
        if self.kind not in ("tone", "chirp"):
            raise ValidationError(f"unknown component kind {self.kind!r}")
        if not (self.f_start > 0 and self.f_end > 0):
            raise ValidationError("component frequencies must be > 0")
        if self.amplitude < 0:
            raise ValidationError("amplitudes must be >= 0")
        if not self.t_on < self.t_off:
            raise ValidationError("need t_on < t_off")

    def instantaneous_frequency(self, t):
        k = (self.f_end - self.f_start) / (self.t_off - self.t_on)
        return self.f_start + k * (np.asarray(t, float) - self.t_on)

    def __call__(self, t):
        t = np.asarray(t, float)
        ref = self.t_on if self.phase_ref is None else self.phase_ref
        dt = t - ref
        if self.kind == "tone":
            phase = self.f_start * dt
        else:
            k = (self.f_end - self.f_start) / (self.t_off - self.t_on)
            phase = self.f_start * dt + 0.5 * k * dt * dt
        active = (t >= self.t_on) & (t <= self.t_off)
        return np.where(active, self.amplitude * np.sin(2.0 * np.pi * phase), 0.0)


@dataclass(frozen=True)
class SignalSpec:
    components: tuple[Component, ...]
    duration: float
    thin_interval: tuple[float, float] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for c in self.components:
            if c.t_on < 0 or c.t_off > self.duration:
                raise ValidationError(f"component [{c.t_on}, {c.t_off}] outside [0, {self.duration}]")

    def instantaneous_frequency(self, t):
        """Frequency of the active component at each ``t`` (NaN where silent).

        Where components overlap the last one listed wins.
        """
        t = np.asarray(t, float)
        out = np.full(t.shape, np.nan)
        for c in self.components:
            on = (t >= c.t_on) & (t <= c.t_off)
            out = np.where(on, c.instantaneous_frequency(t), out)
        return out


def eval_signal(spec: SignalSpec, t):
    t = np.asarray(t, float)
    total = np.zeros(t.shape)
    for c in spec.components:
        total = total + c(t)
    return total


def signal1() -> SignalSpec:
    """Three disjoint transient tones."""
    return SignalSpec(
        (
            Component(0.07, 0.9, 20.0, 70.0),
            Component(0.25, 1.0, 100.0, 140.0),
            Component(0.15, 0.8, 180.0, 210.0),
        ),
        duration=250.0,
    )


def signal2() -> SignalSpec:
    """Linear chirp 0.1 -> 0.2 c/d over 50-150 d."""
    return SignalSpec((Component(0.1, 1.0, 50.0, 150.0, f_end=0.2, kind="chirp"),), duration=200.0)


def signal3() -> SignalSpec:
    """Short 0.4 c/d burst at 95-105 d, sampled sparsely during the burst."""
    return SignalSpec((Component(0.4, 1.0, 95.0, 105.0),), duration=200.0, thin_interval=(95.0, 105.0))


def signal4() -> SignalSpec:
    """Continuous-phase 0.08 c/d tone switched off during 80-160 d."""
    return SignalSpec(
        (
            Component(0.08, 1.0, 0.0, 80.0, phase_ref=0.0),
            Component(0.08, 1.0, 160.0, 240.0, phase_ref=0.0),
        ),
        duration=240.0,
    )


def freq_hop_signal(f_list, switch_times, duration) -> SignalSpec:
    """Unit-amplitude tone whose frequency jumps at each switch time."""
    f_list = [float(f) for f in f_list]
    switch_times = [float(s) for s in switch_times]
    if len(f_list) != len(switch_times) + 1:
        raise BadSwitchTimes("need exactly one more frequency than switch times")
    edges = [0.0, *switch_times, float(duration)]
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise BadSwitchTimes(f"switch times must increase strictly inside (0, {duration})")
    comps = [Component(f, 1.0, lo, hi) for f, lo, hi in zip(f_list, edges, edges[1:])]
    return SignalSpec(tuple(comps), float(duration))


def default_hop_signal() -> SignalSpec:
    return freq_hop_signal([0.1, 0.3, 0.2], [70.0, 140.0], 210.0)


SIGNALS = {
    "1": signal1,
    "2": signal2,
    "3": signal3,
    "4": signal4,
    "hop": default_hop_signal,
}

THIN_KEEP = 0.3


def sample_epochs(spec: SignalSpec, n, seed, burst_thinning=False) -> np.ndarray:
    rng = np.random.default_rng(seed)
    t = np.unique(rng.uniform(0.0, spec.duration, int(n)))
    if burst_thinning and spec.thin_interval is not None:
        lo, hi = spec.thin_interval
        inside = (t >= lo) & (t <= hi)
        keep = ~inside | (rng.random(t.size) < THIN_KEEP)
        t = t[keep]
    return t


def sample_nonuniform(spec: SignalSpec, n, seed, burst_thinning=False) -> TimeSeries:
    """Evaluate ``spec`` at ``n`` uniform-random epochs on ``[0, duration]``.

    With ``burst_thinning`` each epoch inside ``spec.thin_interval`` survives
    with probability 0.3, so the series can be shorter than ``n``.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    t = sample_epochs(spec, n, seed, burst_thinning)
    return make_time_series(t, eval_signal(spec, t))


def add_noise(series: TimeSeries, snr, seed, spec: SignalSpec | None = None) -> TimeSeries:
    """Add white Gaussian noise with std ``RMS(signal) / snr``.

    The RMS is taken over samples where the signal is active: where ``spec``
    has a live component if given, else where the value is nonzero. The
    returned uncertainties equal the noise std.
    """
    if not snr > 0:
        raise NonPositiveSnr(f"snr must be > 0, got {snr}")
    y = series.values
    if spec is not None:
        active = ~np.isnan(spec.instantaneous_frequency(series.times))
    else:
        active = y != 0
    if not active.any():
        raise NonPositiveSnr("signal has zero RMS; SNR is undefined")
    rms = float(np.sqrt(np.mean(y[active] ** 2)))
    if not rms > 0:
        raise NonPositiveSnr("signal has zero RMS; SNR is undefined")
    sigma_n = rms / snr
    rng = np.random.default_rng(seed)
    noisy = y + rng.normal(0.0, sigma_n, y.size)
    return make_time_series(series.times, noisy, np.full(y.size, sigma_n))


def uniform_version(spec: SignalSpec, n):
    """``n`` evenly spaced samples over the same duration (reference transform input)."""
    t = np.linspace(0.0, spec.duration, int(n))
    return t, eval_signal(spec, t)
