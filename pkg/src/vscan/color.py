"""Quantized HSV color histograms (32 hue x 4 saturation x 2 value bins)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _backend
from ._fallback import hsv_components

H_BINS, S_BINS, V_BINS = 32, 4, 2
N_BINS = H_BINS * S_BINS * V_BINS


@dataclass(frozen=True)
class ColorHistogram:
    bins: np.ndarray = field(compare=False)
    frame_index: int

    def __eq__(self, other):
        if not isinstance(other, ColorHistogram):
            return NotImplemented
        return self.frame_index == other.frame_index and np.array_equal(self.bins, other.bins)

    __hash__ = None


def rgb_to_hsv(r, g, b):
    """Hexcone conversion of one 8-bit RGB triple.

    Returns hue in degrees ``[0, 360)`` (0 for grays), saturation and value
    in ``[0, 1]``.
    """
    hue, sat, val = hsv_components(np.array([r, g, b]))
    return float(hue), float(sat), float(val)


def bin_index(h, s, v):
    hi = int(h / 360.0 * H_BINS) % H_BINS
    si = min(int(s * S_BINS), S_BINS - 1)
    vi = min(int(v * V_BINS), V_BINS - 1)
    return hi * (S_BINS * V_BINS) + si * V_BINS + vi


def histogram_of(pixels) -> np.ndarray:
    px = np.ascontiguousarray(pixels, dtype=np.uint8)
    return _backend.hsv_histogram(px)


def color_histogram(frame) -> ColorHistogram:
    return ColorHistogram(bins=histogram_of(frame.pixels), frame_index=frame.index)
