"""Bhattacharyya coefficient and the 0/1/2 composite frame similarity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NormalizationError, ShapeError, UnknownFrame

NORM_TOL = 1e-6
DEFAULT_EPS = 0.97


@dataclass(frozen=True)
class SimilarityThresholds:
    eps_color: float = DEFAULT_EPS
    eps_texture: float = DEFAULT_EPS

    def __post_init__(self):
        for name in ("eps_color", "eps_texture"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


def _check_distribution(x, name):
    if x.ndim != 1:
        raise ShapeError(f"{name} must be a vector, got shape {x.shape}")
    if np.any(x < 0) or not np.isfinite(x).all():
        raise NormalizationError(f"{name} has negative or non-finite entries")
    total = x.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise NormalizationError(f"{name} sums to {total!r}, not 1")


def bhattacharyya(p, q) -> float:
    """Sum of ``sqrt(p_i * q_i)``: 1 for identical distributions, 0 for disjoint ones."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ShapeError(f"length mismatch: {p.shape} vs {q.shape}")
    _check_distribution(p, "p")
    _check_distribution(q, "q")
    return float(np.sqrt(p * q).sum())


def pairwise(rows) -> np.ndarray:
    """Symmetric matrix of coefficients between all rows of ``rows``.

    Computed as a BLAS product of row square roots; the upper triangle is
    mirrored so the result is exactly symmetric.
    """
    root = np.sqrt(np.asarray(rows, dtype=np.float64))
    m = root @ root.T
    upper = np.triu_indices(len(m), 1)
    m.T[upper] = m[upper]
    return m


def cross(a, b) -> np.ndarray:
    """Coefficients between every row of ``a`` and every row of ``b``."""
    a = np.asarray(a, dtype=np.float64).reshape(len(a), -1)
    b = np.asarray(b, dtype=np.float64).reshape(len(b), -1)
    if a.shape[1] != b.shape[1] and len(a) and len(b):
        raise ShapeError(f"feature length mismatch: {a.shape[1]} vs {b.shape[1]}")
    return np.sqrt(a) @ np.sqrt(b).T


def score_from_flags(color_sim, texture_sim):
    """2 if both flags hold, 1 if exactly one does, 0 otherwise."""
    return np.asarray(color_sim, dtype=np.int8) + np.asarray(texture_sim, dtype=np.int8)


def composite_score(p_idx, q_idx, cd, td, th: SimilarityThresholds = SimilarityThresholds()) -> int:
    """Composite score of two frames given ``frame_index -> vector`` lookups."""
    try:
        cp, cq = cd[p_idx], cd[q_idx]
        tp, tq = td[p_idx], td[q_idx]
    except UnknownFrame:
        raise
    except (KeyError, IndexError):
        raise UnknownFrame(f"frame {p_idx!r} or {q_idx!r} missing from the databases") from None
    color_sim = bhattacharyya(cp, cq) >= th.eps_color
    texture_sim = bhattacharyya(tp, tq) >= th.eps_texture
    return int(color_sim) + int(texture_sim)


def score_matrix(db, th: SimilarityThresholds = SimilarityThresholds()) -> np.ndarray:
    """All pairwise composite scores of a FeatureDatabase; diagonal is 2."""
    scores = score_from_flags(pairwise(db.color) >= th.eps_color,
                              pairwise(db.texture) >= th.eps_texture)
    np.fill_diagonal(scores, 2)
    return scores
