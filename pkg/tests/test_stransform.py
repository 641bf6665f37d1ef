import numpy as np
import pytest

from nust import frequency_grid, stransform, stransform_series, synth, time_grid
from nust.errors import NonUniformInput
from nust.stransform import stransform_complex


def test_tone_ridge():
    t = np.arange(200.0)
    fg = frequency_grid(0.02, 0.4, 39)
    tg = time_grid(0.0, 199.0, 50)
    spec = stransform(np.sin(2 * np.pi * 0.2 * t), 1.0, fg, tg)
    ridge = spec.power.argmax(axis=1)
    interior = (tg.values > 40) & (tg.values < 160)
    assert np.all(ridge[interior] == fg.nearest_index(0.2))
    level = spec.power[interior, fg.nearest_index(0.2)]
    assert level.min() > 0.9 * level.max()


def test_zero_signal():
    spec = stransform(np.zeros(64), 1.0, frequency_grid(0.05, 0.45, 9), time_grid(0, 63, 16))
    assert np.all(spec.power == 0.0)


def test_linearity(rng):
    x, y = rng.normal(size=(2, 96))
    f = np.linspace(0.05, 0.45, 12)
    tau = np.linspace(0, 95, 20)
    lhs = stransform_complex(x + 2.5 * y, 2.0, f, tau)
    rhs = stransform_complex(x, 2.0, f, tau) + 2.5 * stransform_complex(y, 2.0, f, tau)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-14)


def collapse_gap(n=128, dt=1.0, f0=0.17):
    t = dt * np.arange(n)
    x = np.cos(2 * np.pi * f0 * t + 0.3)
    f = np.linspace(0.05, 0.45, 33)
    pad = 12.0 / f.min()
    tau = np.arange(t[0] - pad, t[-1] + pad + dt, dt)
    s = stransform_complex(x, 1.0 / dt, f, tau)
    collapsed = dt * s.sum(axis=0)
    fourier = dt * (x * np.exp(-2j * np.pi * np.multiply.outer(f, t))).sum(axis=1)
    return collapsed, fourier


def test_collapse_identity():
    collapsed, fourier = collapse_gap()
    big = np.abs(fourier) > 1e-3 * np.abs(fourier).max()
    rel = np.abs(collapsed - fourier)[big] / np.abs(fourier)[big]
    assert rel.max() < 1e-6
    assert np.linalg.norm(collapsed - fourier) < 1e-6 * np.linalg.norm(fourier)


def test_nonuniform_rejected():
    t = np.array([0.0, 1.0, 2.0, 3.5])
    with pytest.raises(NonUniformInput):
        stransform_series(t, np.zeros(4), frequency_grid(0.1, 0.2, 2), time_grid(0, 3, 2))


def test_sample_rate_and_offset_respected():
    t = 10.0 + 0.5 * np.arange(100)
    y = np.sin(2 * np.pi * 0.3 * t)
    fg = frequency_grid(0.1, 0.5, 21)
    tg = time_grid(10.0, 59.5, 10)
    a = stransform_series(t, y, fg, tg, normalize="none")
    b = stransform(y, 2.0, fg, tg, t0=10.0, normalize="none")
    assert a.equals(b)
    assert a.meta["sample_rate"] == 2.0


def test_signal1_three_blobs():
    spec_sig = synth.signal1()
    t, y = synth.uniform_version(spec_sig, 200)
    fg = frequency_grid(0.01, 0.5, 250)
    tg = time_grid(0.0, 250.0, 126)
    spec = stransform_series(t, y, fg, tg)
    for c in spec_sig.components:
        k = fg.nearest_index(c.f_start)
        row = spec.power[:, k]
        centre = tg.values[row.argmax()]
        assert c.t_on <= centre <= c.t_off
        inside = (tg.values >= c.t_on) & (tg.values <= c.t_off)
        # the blob peak sits on the tone's own row
        j = np.flatnonzero(inside)[row[inside].argmax()]
        assert abs(spec.power[j].argmax() - k) <= 2
