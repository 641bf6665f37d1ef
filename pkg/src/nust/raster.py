"""Spectrogram heatmaps as binary PPM images.

Time runs left to right and frequency bottom to top. Each cell becomes a
``scale x scale`` pixel block coloured through a fixed perceptual ramp;
cells outside the validity mask are painted black, which the ramp never uses.
"""

from __future__ import annotations

import numpy as np

from .core import Spectrogram
from .engine import normalize_power

# viridis anchor colours, interpolated linearly to 256 levels
_ANCHORS = np.array(
    [
        [68, 1, 84],
        [59, 82, 139],
        [33, 145, 140],
        [94, 201, 98],
        [253, 231, 37],
    ],
    dtype=float,
)
_X = np.linspace(0.0, 1.0, len(_ANCHORS))
_LEVELS = np.linspace(0.0, 1.0, 256)
LUT = np.stack([np.interp(_LEVELS, _X, _ANCHORS[:, c]) for c in range(3)], axis=1).round().astype(np.uint8)
MASKED = np.array([0, 0, 0], dtype=np.uint8)


def to_rgb(spec: Spectrogram, normalize_mode="global-max", scale=2) -> np.ndarray:
    """RGB array of shape ``(n_f * scale, n_tau * scale, 3)``."""
    spec = normalize_power(spec, normalize_mode)
    level = np.clip(np.rint(spec.power * 255.0), 0, 255).astype(np.intp)
    rgb = LUT[level]
    rgb[~spec.valid] = MASKED
    # (tau, f) -> (f, tau) with the highest frequency on the top row
    img = np.transpose(rgb, (1, 0, 2))[::-1]
    return np.repeat(np.repeat(img, scale, axis=0), scale, axis=1)


def render_heatmap(spec: Spectrogram, path, normalize_mode="global-max", scale=2):
    img = to_rgb(spec, normalize_mode, scale)
    h, w, _ = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img).tobytes())
    return img
