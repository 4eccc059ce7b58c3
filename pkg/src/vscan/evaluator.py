"""Comparison of automatic summaries against user summaries.

Two frames match when they are color-similar OR texture-similar; matching
is greedy and one-to-one, scanning both summaries in temporal order.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import IoError, ManifestError
from .features import FeatureDatabase, extract_features
from .ingest import Frame, _read_image, load_image_directory, IMAGE_SUFFIXES
from .similarity import SimilarityThresholds, cross
from .summarizer import MANIFEST_NAME

CSV_COLUMNS = ("video_id", "user_id", "precision", "recall", "f_measure")
MEAN_ID = "mean"
CORPUS_ID = "ALL"


@dataclass(frozen=True)
class EvalReport:
    n_auto: int
    n_user: int
    n_matched: int
    precision: float
    recall: float
    f_measure: float

    @classmethod
    def from_counts(cls, n_auto, n_user, n_matched):
        if not 0 <= n_matched <= min(n_auto, n_user):
            raise ValueError(f"{n_matched} matches impossible for {n_auto} x {n_user} frames")
        p = n_matched / n_auto if n_auto else 0.0
        r = n_matched / n_user if n_user else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(n_auto, n_user, n_matched, p, r, f)


def _as_db(frames) -> FeatureDatabase:
    if isinstance(frames, FeatureDatabase):
        return frames
    return extract_features(list(frames))


def similarity_table(auto_db, user_db, th=SimilarityThresholds()) -> np.ndarray:
    """Boolean ``(n_auto, n_user)`` table of color-OR-texture similarity."""
    if len(auto_db) == 0 or len(user_db) == 0:
        return np.zeros((len(auto_db), len(user_db)), dtype=bool)
    color = cross(auto_db.color, user_db.color) >= th.eps_color
    texture = cross(auto_db.texture, user_db.texture) >= th.eps_texture
    return color | texture


def greedy_match(table) -> list:
    """First-fit one-to-one matching over a boolean similarity table."""
    table = np.asarray(table, dtype=bool)
    taken = np.zeros(table.shape[1] if table.ndim == 2 else 0, dtype=bool)
    pairs = []
    for i, row in enumerate(table):
        free = np.flatnonzero(row & ~taken)
        if free.size:
            j = int(free[0])
            taken[j] = True
            pairs.append((i, j))
    return pairs


def match_summaries(auto, user, th=SimilarityThresholds()) -> list:
    """Matched ``(auto_position, user_position)`` pairs."""
    return greedy_match(similarity_table(_as_db(auto), _as_db(user), th))


def evaluate(auto, user, th=SimilarityThresholds()) -> EvalReport:
    auto_db, user_db = _as_db(auto), _as_db(user)
    pairs = greedy_match(similarity_table(auto_db, user_db, th))
    return EvalReport.from_counts(len(auto_db), len(user_db), len(pairs))


def load_summary_frames(path) -> list:
    """Frames of a summary directory.

    A directory written by ``write_summary`` is read through its manifest
    (so the contact sheet is skipped); any other directory contributes all
    of its images. An empty directory is an empty summary.
    """
    path = Path(path)
    if not path.is_dir():
        raise IoError(f"summary directory not found: {path}")
    manifest = path / MANIFEST_NAME
    if manifest.is_file():
        entries = json.loads(manifest.read_text(encoding="utf-8"))["keyframes"]
        return [Frame(i, int(e.get("source_second", i)), _read_image(path / e["file"]))
                for i, e in enumerate(entries)]
    if not any(p.suffix.lower() in IMAGE_SUFFIXES for p in path.iterdir()):
        return []
    return list(load_image_directory(path).frames)


def parse_manifest(path) -> list:
    """``[(video_id, auto_dir, [user_dir, ...]), ...]`` from a tab-separated manifest.

    Relative directories resolve against the manifest's own directory;
    blank lines and ``#`` comments are skipped.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read manifest {path}: {exc}") from exc
    base = path.parent
    entries, seen = [], set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ManifestError(f"expected 3 tab-separated fields, got {len(parts)}", lineno)
        video_id, auto_dir, users = (p.strip() for p in parts)
        user_dirs = [u.strip() for u in users.split(",") if u.strip()]
        if not video_id or not auto_dir or not user_dirs:
            raise ManifestError("empty video id, auto dir or user dir list", lineno)
        if video_id in seen:
            raise ManifestError(f"duplicate video id {video_id!r}", lineno)
        seen.add(video_id)
        entries.append((video_id, base / auto_dir, [base / u for u in user_dirs], lineno))
    if not entries:
        raise ManifestError("manifest lists no videos")
    return entries


@dataclass(frozen=True)
class BatchResult:
    rows: list          # (video_id, user_id, EvalReport), sorted
    video_means: dict   # video_id -> mean F over that video's users
    corpus_mean: float  # mean of the per-video means

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        by_video = {}
        for vid, uid, rep in self.rows:
            by_video.setdefault(vid, []).append(rep)
            w.writerow([vid, uid, f"{rep.precision:.6f}", f"{rep.recall:.6f}", f"{rep.f_measure:.6f}"])
        for vid, reps in by_video.items():
            w.writerow([vid, MEAN_ID,
                        f"{np.mean([r.precision for r in reps]):.6f}",
                        f"{np.mean([r.recall for r in reps]):.6f}",
                        f"{self.video_means[vid]:.6f}"])
        videos = list(by_video)
        w.writerow([CORPUS_ID, MEAN_ID,
                    f"{np.mean([np.mean([r.precision for r in by_video[v]]) for v in videos]):.6f}",
                    f"{np.mean([np.mean([r.recall for r in by_video[v]]) for v in videos]):.6f}",
                    f"{self.corpus_mean:.6f}"])
        return buf.getvalue()


def _entry_db(directory, video_id, lineno):
    try:
        return _as_db(load_summary_frames(directory))
    except IoError as exc:
        raise IoError(f"manifest line {lineno} ({video_id}): {exc}") from exc


def batch_evaluate(manifest, out_csv=None, th=SimilarityThresholds()) -> BatchResult:
    rows = []
    for video_id, auto_dir, user_dirs, lineno in parse_manifest(manifest):
        auto_db = _entry_db(auto_dir, video_id, lineno)
        for udir in user_dirs:
            user_db = _entry_db(udir, video_id, lineno)
            rows.append((video_id, udir.name, evaluate(auto_db, user_db, th)))
    rows.sort(key=lambda r: (r[0], r[1]))
    video_means = {}
    for vid, _, rep in rows:
        video_means.setdefault(vid, []).append(rep.f_measure)
    video_means = {v: float(np.mean(fs)) for v, fs in video_means.items()}
    result = BatchResult(rows, video_means, float(np.mean(list(video_means.values()))))
    if out_csv is not None:
        try:
            Path(out_csv).write_text(result.to_csv(), encoding="utf-8", newline="")
        except OSError as exc:
            raise IoError(f"cannot write {out_csv}: {exc}") from exc
    return result
