import numpy as np
import pytest

from nust import make_time_series


def dense_wls(t, y, w, f):
    """Reference weighted fit via a generic least-squares solve of the design matrix."""
    t = np.asarray(t, float)
    x = np.column_stack([np.cos(2 * np.pi * f * t), np.sin(2 * np.pi * f * t), np.ones_like(t)])
    sw = np.sqrt(w)
    coef, *_ = np.linalg.lstsq(x * sw[:, None], y * sw, rcond=None)
    chi2 = float(np.sum(w * (y - x @ coef) ** 2))
    ybar = np.sum(w * y) / np.sum(w)
    chi2_0 = float(np.sum(w * (y - ybar) ** 2))
    return coef, chi2, chi2_0


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def random_series(rng):
    t = np.sort(rng.uniform(0, 200, 120))
    y = np.sin(2 * np.pi * 0.1 * t) + 0.3 * rng.normal(size=t.size)
    s = rng.uniform(0.5, 2.0, t.size)
    return make_time_series(t, y, s)


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one summary line for an acceptance criterion."""

    def record(label, status, detail):
        ACCEPTANCE_LINES.append(f"{status:4s}  {label}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
