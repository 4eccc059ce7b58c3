"""Keyframe selection and summary output."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

from .clustering import ClusterAssignment, ClusteringParams
from .errors import IoError

CONTACT_HEIGHT = 120
MANIFEST_NAME = "summary.json"


@dataclass(frozen=True)
class Keyframe:
    frame_index: int
    cluster_id: int


@dataclass(frozen=True)
class Summary:
    keyframes: tuple
    source_id: str = ""
    params_echo: ClusteringParams = field(default_factory=ClusteringParams)
    n_frames: int = 0
    noise_frames: tuple = ()

    @property
    def n_noise(self) -> int:
        return len(self.noise_frames)

    def __len__(self):
        return len(self.keyframes)

    @property
    def frame_indices(self):
        return [k.frame_index for k in self.keyframes]


def select_keyframes(assignment: ClusterAssignment, db_order=None, source_id="",
                     params=None) -> Summary:
    """Pick the middle core frame (lower median) of every cluster.

    ``db_order`` overrides the temporal order of ``assignment.indices``.
    """
    order = list(db_order) if db_order is not None else list(assignment.indices)
    rank = {idx: k for k, idx in enumerate(order)}
    cores = {}
    for idx, lab, is_core in zip(assignment.indices, assignment.labels, assignment.core):
        if lab > 0 and is_core:
            cores.setdefault(int(lab), []).append(idx)
    picks = []
    for cid, members in cores.items():
        members.sort(key=rank.__getitem__)
        picks.append(Keyframe(members[(len(members) - 1) // 2], cid))
    picks.sort(key=lambda k: rank[k.frame_index])
    missing = set(int(x) for x in np.unique(assignment.labels) if x > 0) - set(cores)
    assert not missing, f"clusters without a core frame: {sorted(missing)}"
    return Summary(
        keyframes=tuple(picks),
        source_id=source_id,
        params_echo=params if params is not None else ClusteringParams(),
        n_frames=len(assignment.indices),
        noise_frames=tuple(assignment.noise()),
    )


def keyframe_filename(kf: Keyframe) -> str:
    return f"key_{kf.cluster_id}_{kf.frame_index}.png"


def manifest_dict(summary: Summary, frames) -> dict:
    by_index = {f.index: f for f in frames}
    return {
        "source_id": summary.source_id,
        "parameters": summary.params_echo.as_dict(),
        "n_frames": summary.n_frames,
        "n_noise": summary.n_noise,
        "noise_frames": list(summary.noise_frames),
        "n_keyframes": len(summary),
        "contact_sheet": "contact.png" if len(summary) else None,
        "keyframes": [
            {
                "cluster_id": kf.cluster_id,
                "frame_index": kf.frame_index,
                "source_second": by_index[kf.frame_index].source_second,
                "file": keyframe_filename(kf),
            }
            for kf in summary.keyframes
        ],
    }


def contact_sheet(images, height=CONTACT_HEIGHT) -> Image.Image:
    """Tile images left to right, each scaled to ``height`` pixels."""
    tiles = []
    for im in images:
        w = max(1, round(im.width * height / im.height))
        tiles.append(im.resize((w, height), Image.Resampling.BILINEAR))
    sheet = Image.new("RGB", (sum(t.width for t in tiles), height))
    x = 0
    for t in tiles:
        sheet.paste(t, (x, 0))
        x += t.width
    return sheet


def write_summary(summary: Summary, frames, outdir) -> Path:
    """Write keyframe PNGs, ``contact.png`` and ``summary.json``; return the manifest path."""
    outdir = Path(outdir)
    by_index = {f.index: f for f in frames}
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        images = []
        for kf in summary.keyframes:
            im = Image.fromarray(np.asarray(by_index[kf.frame_index].pixels), "RGB")
            im.save(outdir / keyframe_filename(kf))
            images.append(im)
        if images:
            contact_sheet(images).save(outdir / "contact.png")
        path = outdir / MANIFEST_NAME
        text = json.dumps(manifest_dict(summary, frames), indent=2, sort_keys=True)
        path.write_text(text + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write summary to {outdir}: {exc}") from exc
    return path
