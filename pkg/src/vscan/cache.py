"""Binary feature cache so evaluation sweeps skip re-extraction.

Layout: an 8-byte magic, one JSON header line, then little-endian int64
indices and source seconds followed by float64 color and texture rows.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import CacheVersionError, IoError
from .features import EXTRACTOR_VERSION, FeatureDatabase

MAGIC = b"VSCANFC\n"
FORMAT_VERSION = 1


def content_key(frames) -> str:
    """Hash of every frame's raster and timing, plus the extractor version."""
    h = hashlib.sha256(f"extractor={EXTRACTOR_VERSION}".encode())
    for f in frames:
        px = np.ascontiguousarray(f.pixels)
        h.update(f"{f.index}:{f.source_second}:{px.shape}".encode())
        h.update(px.tobytes())
    return h.hexdigest()


def cache_features(db: FeatureDatabase, path, key: str = "") -> Path:
    path = Path(path)
    header = {
        "format_version": FORMAT_VERSION,
        "extractor_version": EXTRACTOR_VERSION,
        "key": key,
        "n": len(db),
        "color_dim": int(db.color.shape[1]),
        "texture_dim": int(db.texture.shape[1]),
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(json.dumps(header, sort_keys=True).encode() + b"\n")
            fh.write(np.asarray(db.indices, dtype="<i8").tobytes())
            fh.write(np.asarray(db.source_seconds, dtype="<i8").tobytes())
            fh.write(db.color.astype("<f8").tobytes())
            fh.write(db.texture.astype("<f8").tobytes())
    except OSError as exc:
        raise IoError(f"cannot write feature cache {path}: {exc}") from exc
    return path


def load_cached(path, key: str | None = None) -> FeatureDatabase:
    """Read a cache file; CacheVersionError means the caller should recompute."""
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise IoError(f"cannot read feature cache {path}: {exc}") from exc
    if not blob.startswith(MAGIC):
        raise CacheVersionError(f"{path} is not a feature cache")
    nl = blob.index(b"\n", len(MAGIC))
    header = json.loads(blob[len(MAGIC):nl])
    if (header.get("format_version"), header.get("extractor_version")) != (FORMAT_VERSION, EXTRACTOR_VERSION):
        raise CacheVersionError(
            f"{path}: cache version {header.get('format_version')}/{header.get('extractor_version')}, "
            f"expected {FORMAT_VERSION}/{EXTRACTOR_VERSION}")
    if key is not None and header.get("key") != key:
        raise CacheVersionError(f"{path}: cache was built from different frames")
    n, cd, td = header["n"], header["color_dim"], header["texture_dim"]
    body = memoryview(blob)[nl + 1:]
    sizes = [8 * n, 8 * n, 8 * n * cd, 8 * n * td]
    if len(body) != sum(sizes):
        raise CacheVersionError(f"{path}: truncated or corrupt cache body")
    parts, off = [], 0
    for size in sizes:
        parts.append(body[off:off + size])
        off += size
    return FeatureDatabase(
        indices=tuple(np.frombuffer(parts[0], dtype="<i8").tolist()),
        source_seconds=tuple(np.frombuffer(parts[1], dtype="<i8").tolist()),
        color=np.frombuffer(parts[2], dtype="<f8").reshape(n, cd).astype(np.float64),
        texture=np.frombuffer(parts[3], dtype="<f8").reshape(n, td).astype(np.float64),
    )
