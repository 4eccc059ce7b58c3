"""Per-frame color and texture databases."""

from __future__ import annotations

from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .color import ColorHistogram, N_BINS, histogram_of
from .errors import UnknownFrame
from .texture import N_COEFFS, TextureVector, texture_of

#: bump whenever an extractor changes output for the same pixels
EXTRACTOR_VERSION = 1


class FeatureView(Mapping):
    """Read-only ``frame_index -> vector`` view over one feature array."""

    def __init__(self, indices, rows, kind):
        self._pos = {int(i): k for k, i in enumerate(indices)}
        self._rows = rows
        self._kind = kind

    def position(self, idx) -> int:
        try:
            return self._pos[int(idx)]
        except (KeyError, TypeError, ValueError):
            raise UnknownFrame(f"frame {idx!r} not in {self._kind} database") from None

    def __getitem__(self, idx):
        return self._rows[self.position(idx)]

    def __iter__(self):
        return iter(self._pos)

    def __len__(self):
        return len(self._pos)


@dataclass(frozen=True)
class FeatureDatabase:
    """Color (CD) and texture (TD) features for one frame sequence.

    ``indices`` is the temporal order; row ``k`` of ``color``/``texture``
    belongs to frame ``indices[k]``.
    """

    indices: tuple
    color: np.ndarray = field(repr=False, compare=False)
    texture: np.ndarray = field(repr=False, compare=False)
    source_seconds: tuple = field(default=(), repr=False)

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        color = np.ascontiguousarray(self.color, dtype=np.float64)
        texture = np.ascontiguousarray(self.texture, dtype=np.float64)
        if color.ndim != 2 or texture.ndim != 2 or len(color) != len(idx) or len(texture) != len(idx):
            raise ValueError("color/texture rows must match the index list")
        if len(set(idx)) != len(idx) or list(idx) != sorted(idx):
            raise ValueError("frame indices must be unique and increasing")
        color.flags.writeable = False
        texture.flags.writeable = False
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "color", color)
        object.__setattr__(self, "texture", texture)
        object.__setattr__(self, "source_seconds", tuple(self.source_seconds) or idx)

    def __len__(self):
        return len(self.indices)

    @property
    def cd(self) -> FeatureView:
        return FeatureView(self.indices, self.color, "color")

    @property
    def td(self) -> FeatureView:
        return FeatureView(self.indices, self.texture, "texture")

    def histogram(self, idx) -> ColorHistogram:
        return ColorHistogram(bins=self.cd[idx], frame_index=int(idx))

    def texture_vector(self, idx) -> TextureVector:
        return TextureVector(coeffs=self.td[idx], frame_index=int(idx))

    def __eq__(self, other):
        if not isinstance(other, FeatureDatabase):
            return NotImplemented
        return (self.indices == other.indices
                and self.source_seconds == other.source_seconds
                and np.array_equal(self.color, other.color)
                and np.array_equal(self.texture, other.texture))

    __hash__ = None


def _frame_features(frame):
    return histogram_of(frame.pixels), texture_of(frame.pixels)


def extract_features(frames, workers=None) -> FeatureDatabase:
    """Compute both feature sets for every frame (thread pool, order kept)."""
    frames = list(frames)
    if workers == 1 or len(frames) < 8:
        feats = [_frame_features(f) for f in frames]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            feats = list(pool.map(_frame_features, frames))
    color = np.array([c for c, _ in feats]).reshape(len(frames), N_BINS)
    texture = np.array([t for _, t in feats]).reshape(len(frames), N_COEFFS)
    return FeatureDatabase(
        indices=tuple(f.index for f in frames),
        color=color,
        texture=texture,
        source_seconds=tuple(f.source_second for f in frames),
    )
