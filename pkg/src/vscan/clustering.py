"""Dual-feature density clustering of frames, plus the color-only baseline.

Frames are similar at composite level ``eps`` when their 0/1/2 score equals
``eps``; a frame is core when it has at least ``minpts`` similar frames
*other than itself*, so with ``minpts=1`` isolated frames become noise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .features import FeatureDatabase
from .similarity import SimilarityThresholds, pairwise, score_matrix

NOISE = -1


class Mode(str, enum.Enum):
    DUAL = "dual"
    COLOR = "color"


@dataclass(frozen=True)
class ClusteringParams:
    thresholds: SimilarityThresholds = field(default_factory=SimilarityThresholds)
    eps: int = 2
    minpts: int = 1
    mode: Mode = Mode.DUAL

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.eps not in (0, 1, 2):
            raise ValueError(f"eps must be 0, 1 or 2, got {self.eps}")
        if int(self.minpts) != self.minpts or self.minpts < 1:
            raise ValueError(f"minpts must be a positive integer, got {self.minpts}")

    @classmethod
    def db_color(cls, eps_color=0.97, minpts=1):
        return cls(SimilarityThresholds(eps_color, 1.0), eps=2, minpts=minpts, mode=Mode.COLOR)

    def as_dict(self):
        return {
            "mode": self.mode.value,
            "eps_color": self.thresholds.eps_color,
            "eps_texture": self.thresholds.eps_texture,
            "eps": self.eps,
            "minpts": self.minpts,
        }


@dataclass(frozen=True)
class ClusterAssignment:
    """Labels aligned with ``indices``: cluster ids start at 1, noise is -1."""

    indices: tuple
    labels: np.ndarray = field(compare=False)
    core: np.ndarray = field(compare=False)

    def __post_init__(self):
        for name in ("labels", "core"):
            arr = np.array(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def __eq__(self, other):
        if not isinstance(other, ClusterAssignment):
            return NotImplemented
        return (self.indices == other.indices and np.array_equal(self.labels, other.labels)
                and np.array_equal(self.core, other.core))

    __hash__ = None

    def label_of(self, idx):
        return int(self.labels[self.indices.index(idx)])

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max(initial=0))

    def clusters(self) -> dict:
        """``cluster_id -> [frame_index, ...]`` in temporal order."""
        out = {}
        for idx, lab in zip(self.indices, self.labels):
            if lab != NOISE:
                out.setdefault(int(lab), []).append(idx)
        return dict(sorted(out.items()))

    def core_frames(self) -> list:
        return [i for i, c in zip(self.indices, self.core) if c]

    def noise(self) -> list:
        return [i for i, lab in zip(self.indices, self.labels) if lab == NOISE]


def adjacency_from_scores(scores, eps) -> np.ndarray:
    """Boolean similarity graph ``score == eps`` with self-loops removed."""
    adj = np.asarray(scores) == eps
    np.fill_diagonal(adj, False)
    return adj


def adjacency(db: FeatureDatabase, params: ClusteringParams) -> np.ndarray:
    if params.mode is Mode.COLOR:
        adj = pairwise(db.color) >= params.thresholds.eps_color
        np.fill_diagonal(adj, False)
        return adj
    return adjacency_from_scores(score_matrix(db, params.thresholds), params.eps)


def neighborhood(p, db: FeatureDatabase, params: ClusteringParams) -> set:
    """Frames similar to ``p`` under ``params``, excluding ``p`` itself."""
    pos = db.cd.position(p)
    # same matrix as cluster() so the two can never disagree near a threshold
    row = adjacency(db, params)[pos]
    return {db.indices[k] for k in np.flatnonzero(row)}


def cluster_graph(adj, minpts: int, indices=None) -> ClusterAssignment:
    """Cluster a precomputed similarity graph, visiting frames in index order."""
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    n = adj.shape[0]
    if adj.shape != (n, n):
        raise ValueError(f"adjacency must be square, got {adj.shape}")
    labels, core = _backend.expand_clusters(adj, int(minpts))
    return ClusterAssignment(tuple(range(n)) if indices is None else tuple(indices), labels, core)


def cluster(db: FeatureDatabase, params: ClusteringParams = ClusteringParams()) -> ClusterAssignment:
    if len(db) == 0:
        raise ValueError("cannot cluster an empty database")
    return cluster_graph(adjacency(db, params), params.minpts, db.indices)
