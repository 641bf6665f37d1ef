"""Weighted sinusoid-plus-offset least squares and the GLS periodogram.

For each trial frequency the model ``a cos(2 pi f t) + b sin(2 pi f t) + c`` is
fit by solving the 3x3 normal equations, and the power is the fractional
reduction of weighted chi-square relative to the best constant.

The batched routines here work on arrays whose last axis runs over samples,
so the same code serves one fit, a periodogram, or one spectrogram row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FrequencyGrid, Periodogram, TimeSeries
from .errors import AllZeroWeights, LengthMismatch, NonPositiveFrequency, ValidationError

SINGULAR_RTOL = 1e-12


@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    c: float
    chi2_fit: float
    chi2_0: float
    power: float
    ess: float
    degenerate: bool = False


def solve3(matrix, rhs, rtol=SINGULAR_RTOL):
    """Solve stacks of 3x3 systems by Gaussian elimination with partial pivoting.

    ``matrix`` has shape ``(..., 3, 3)`` and ``rhs`` ``(..., 3)``. Returns
    ``(x, singular)``; a system is flagged singular when a pivot falls below
    ``rtol`` times its largest absolute diagonal entry, and its ``x`` is zero.
    """
    m = np.concatenate([np.asarray(matrix, float), np.asarray(rhs, float)[..., None]], axis=-1)
    batch = m.shape[:-2]
    scale = np.max(np.abs(np.diagonal(m[..., :3], axis1=-2, axis2=-1)), axis=-1)
    singular = np.zeros(batch, dtype=bool)
    rows = np.broadcast_to(np.arange(3), batch + (3,)).copy()

    for col in range(3):
        piv = col + np.argmax(np.abs(m[..., col:, col]), axis=-1)
        perm = rows.copy()
        perm[..., col] = piv
        np.put_along_axis(perm, piv[..., None], col, axis=-1)
        m = np.take_along_axis(m, perm[..., None], axis=-2)
        pivot = m[..., col, col]
        singular |= ~(np.abs(pivot) > rtol * scale)
        safe = np.where(singular, 1.0, pivot)
        for r in range(col + 1, 3):
            factor = m[..., r, col] / safe
            m[..., r, :] = m[..., r, :] - factor[..., None] * m[..., col, :]

    x = np.empty(batch + (3,))
    for r in (2, 1, 0):
        acc = m[..., r, 3]
        for c in range(r + 1, 3):
            acc = acc - m[..., r, c] * x[..., c]
        x[..., r] = acc / np.where(singular, 1.0, m[..., r, r])
    x[singular] = 0.0
    return x, singular


def fit_batch(cos, sin, values, weights, rtol=SINGULAR_RTOL):
    """Vectorized weighted sinusoid fit.

    ``cos`` and ``sin`` are the basis columns evaluated at the sample epochs,
    ``weights`` the per-sample weights; all broadcast against ``values`` along
    the last axis. Returns a dict of arrays with the leading (batch) shape.
    Weight sums must be positive; callers check that.
    """
    shape = np.broadcast_shapes(np.shape(cos), np.shape(values), np.shape(weights))
    w = np.broadcast_to(np.asarray(weights, float), shape)
    y = np.broadcast_to(np.asarray(values, float), shape)
    sw = w.sum(axis=-1)
    ess = sw**2 / (w * w).sum(axis=-1)
    ybar = (w * y).sum(axis=-1) / sw
    yc = y - ybar[..., None]
    chi2_0 = (w * yc * yc).sum(axis=-1)

    wc = w * cos
    ws = w * sin
    scc = (wc * cos).sum(axis=-1)
    scs = (wc * sin).sum(axis=-1)
    sss = (ws * sin).sum(axis=-1)
    sc = wc.sum(axis=-1)
    ss = ws.sum(axis=-1)
    normal = np.stack(
        [
            np.stack([scc, scs, sc], axis=-1),
            np.stack([scs, sss, ss], axis=-1),
            np.stack([sc, ss, sw], axis=-1),
        ],
        axis=-2,
    )
    rhs = np.stack([(wc * yc).sum(axis=-1), (ws * yc).sum(axis=-1), (w * yc).sum(axis=-1)], axis=-1)
    coef, singular = solve3(normal, rhs, rtol)
    a, b, c = coef[..., 0], coef[..., 1], coef[..., 2]

    resid = yc - a[..., None] * cos - b[..., None] * sin - c[..., None]
    chi2_fit = (w * resid * resid).sum(axis=-1)
    chi2_fit = np.where(singular, chi2_0, np.minimum(chi2_fit, chi2_0))
    with np.errstate(invalid="ignore", divide="ignore"):
        power = np.where(chi2_0 > 0, (chi2_0 - chi2_fit) / chi2_0, 0.0)
    power = np.clip(power, 0.0, 1.0)
    return {
        "a": a,
        "b": b,
        "c": c + ybar,
        "chi2_fit": chi2_fit,
        "chi2_0": chi2_0,
        "power": power,
        "ess": ess,
        "singular": singular,
    }


def basis(times, freqs):
    """``cos`` and ``sin`` of ``2 pi f t``, shape ``(len(freqs), len(times))``."""
    phase = 2.0 * np.pi * np.multiply.outer(np.asarray(freqs, float), np.asarray(times, float))
    return np.cos(phase), np.sin(phase)


def weighted_sine_fit(times, values, weights, f) -> FitResult:
    """Least-squares fit of ``a cos(2 pi f t) + b sin(2 pi f t) + c``.

    Both chi-square values use the supplied weights. A numerically singular
    normal system falls back to the constant model (``a = b = 0``), giving zero
    power and ``degenerate=True``.
    """
    t = np.asarray(times, float)
    y = np.asarray(values, float)
    w = np.asarray(weights, float)
    if not (t.shape == y.shape == w.shape):
        raise LengthMismatch("times, values and weights must have equal length")
    if not f > 0:
        raise NonPositiveFrequency(f"frequency must be > 0, got {f}")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValidationError("weights must be finite and >= 0")
    if not w.sum() > 0:
        raise AllZeroWeights("weights sum to zero")
    cos, sin = basis(t, [f])
    out = fit_batch(cos[0], sin[0], y, w)
    return FitResult(
        a=float(out["a"]),
        b=float(out["b"]),
        c=float(out["c"]),
        chi2_fit=float(out["chi2_fit"]),
        chi2_0=float(out["chi2_0"]),
        power=float(out["power"]),
        ess=float(out["ess"]),
        degenerate=bool(out["singular"]),
    )


def gls_periodogram(series: TimeSeries, freq_grid: FrequencyGrid) -> Periodogram:
    """GLS power at every grid frequency with weights ``1 / sigma_i**2``."""
    f = freq_grid.values
    cos, sin = basis(series.times, f)
    out = fit_batch(cos, sin, series.values, series.weights[None, :])
    power = out["power"]
    power.setflags(write=False)
    return Periodogram(freq_grid, power)
