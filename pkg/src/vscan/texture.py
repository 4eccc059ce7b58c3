"""Level-3 Haar approximation texture features on a 64x64 HSV raster."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._fallback import hsv_components
from .errors import ShapeError

SIDE = 64
LEVELS = 3
N_COEFFS = 3 * (SIDE >> LEVELS) ** 2
_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class TextureVector:
    coeffs: np.ndarray = field(compare=False)
    frame_index: int

    def __eq__(self, other):
        if not isinstance(other, TextureVector):
            return NotImplemented
        return self.frame_index == other.frame_index and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None


def _axis_weights(n_in: int, n_out: int) -> np.ndarray:
    """(n_out, n_in) resampling matrix whose rows sum to 1.

    Box-filter area averaging when shrinking, bilinear (pixel-center
    aligned, edge-clamped) when enlarging.
    """
    w = np.zeros((n_out, n_in))
    if n_out <= n_in:
        scale = n_in / n_out
        for i in range(n_out):
            lo, hi = i * scale, (i + 1) * scale
            for j in range(int(np.floor(lo)), min(int(np.ceil(hi)), n_in)):
                w[i, j] = min(hi, j + 1) - max(lo, j)
        w /= w.sum(axis=1, keepdims=True)
    else:
        scale = n_in / n_out
        for i in range(n_out):
            x = min(max((i + 0.5) * scale - 0.5, 0.0), n_in - 1)
            j = int(np.floor(x))
            t = x - j
            w[i, j] += 1.0 - t
            if t > 0:
                w[i, j + 1] += t
    return w


def resize_64(frame_or_pixels) -> np.ndarray:
    """Resample a raster to a 64x64 8-bit RGB raster."""
    px = np.asarray(getattr(frame_or_pixels, "pixels", frame_or_pixels))
    h, w = px.shape[:2]
    if (h, w) == (SIDE, SIDE):
        return px.astype(np.uint8, copy=True)
    rows = _axis_weights(h, SIDE)
    cols = _axis_weights(w, SIDE)
    tall = (rows @ px.astype(np.float64).reshape(h, -1)).reshape(SIDE, w, 3)
    out = np.matmul(cols, tall)
    # rounding to 8 bits keeps uniform rasters exactly uniform
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def haar_step(x: np.ndarray):
    """One orthonormal 2D Haar analysis step: rows first, then columns.

    Returns ``(ll, lh, hl, hh)``, each half the size along both axes.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] % 2 or x.shape[1] % 2:
        raise ShapeError(f"haar step needs an even-sized 2D array, got {x.shape}")
    lo = (x[:, 0::2] + x[:, 1::2]) / _SQRT2
    hi = (x[:, 0::2] - x[:, 1::2]) / _SQRT2
    ll = (lo[0::2] + lo[1::2]) / _SQRT2
    lh = (lo[0::2] - lo[1::2]) / _SQRT2
    hl = (hi[0::2] + hi[1::2]) / _SQRT2
    hh = (hi[0::2] - hi[1::2]) / _SQRT2
    return ll, lh, hl, hh


def haar2d_approx(channel, levels: int = LEVELS) -> np.ndarray:
    channel = np.asarray(channel, dtype=np.float64)
    if channel.shape != (SIDE, SIDE):
        raise ShapeError(f"expected a {SIDE}x{SIDE} channel, got {channel.shape}")
    if levels < 1 or SIDE >> levels == 0:
        raise ShapeError(f"invalid decomposition level {levels}")
    approx = channel
    for _ in range(levels):
        approx = haar_step(approx)[0]
    return approx


def raw_texture(pixels) -> np.ndarray:
    """Unnormalized H, S, V approximation bands, concatenated (192 values)."""
    hue, sat, val = hsv_components(resize_64(pixels))
    return np.concatenate([haar2d_approx(ch).ravel() for ch in (hue / 360.0, sat, val)])


def texture_of(pixels) -> np.ndarray:
    vec = raw_texture(pixels)
    total = vec.sum()
    if total <= 0.0:
        return np.full(N_COEFFS, 1.0 / N_COEFFS)
    return vec / total


def texture_vector(frame) -> TextureVector:
    return TextureVector(coeffs=texture_of(frame.pixels), frame_index=frame.index)
