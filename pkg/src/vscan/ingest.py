"""Frame loading and 1 fps pre-sampling."""

from __future__ import annotations

import math
import os
import re
import shutil
import subprocess
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, DecoderUnavailable, InvalidRate, NoFrames

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")
DEFAULT_DECODER = "ffmpeg"


@dataclass(frozen=True)
class Frame:
    index: int
    source_second: int
    pixels: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 3 or px.shape[2] != 3 or px.shape[0] == 0 or px.shape[1] == 0:
            raise ValueError(f"frame {self.index}: expected non-empty HxWx3 raster, got {px.shape}")
        if px.dtype != np.uint8:
            if px.min() < 0 or px.max() > 255:
                raise ValueError(f"frame {self.index}: channel values outside [0, 255]")
            px = px.astype(np.uint8)
        px = np.ascontiguousarray(px)
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def size(self):
        """(height, width) of the raster."""
        return self.pixels.shape[:2]


@dataclass(frozen=True)
class FrameSequence:
    frames: tuple
    source_fps: Fraction = Fraction(1)
    source_id: str = ""
    #: frame rate reported by the video container, when the frames came from a decoder
    container_fps: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))
        object.__setattr__(self, "source_fps", parse_rate(self.source_fps))
        for pos, fr in enumerate(self.frames):
            if fr.index != pos:
                raise ValueError(f"frame at position {pos} has index {fr.index}")

    def __len__(self):
        return len(self.frames)

    def __iter__(self):
        return iter(self.frames)

    def __getitem__(self, i):
        return self.frames[i]


def parse_rate(value) -> Fraction:
    """Parse ``30``, ``29.97`` or ``30000/1001`` into a positive Fraction."""
    try:
        rate = value if isinstance(value, Fraction) else Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidRate(f"not a frame rate: {value!r}") from exc
    if rate <= 0:
        raise InvalidRate(f"frame rate must be positive, got {value!r}")
    return rate


def _read_image(path: Path) -> np.ndarray:
    try:
        with Image.open(path) as im:
            return np.asarray(im.convert("RGB"), dtype=np.uint8)
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise DecodeError(f"cannot decode {path}: {exc}") from exc


def load_image_directory(path, fps=1, source_id=None) -> FrameSequence:
    """Load every PNG/JPEG in ``path`` in lexicographic filename order.

    ``fps`` declares the rate the images were captured at; frames carry
    ``source_second = floor(position / fps)``. Rasters may differ in size.
    """
    path = Path(path)
    if not path.is_dir():
        raise NoFrames(f"{path} is not a directory")
    rate = parse_rate(fps)
    files = sorted(p for p in path.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES)
    if not files:
        raise NoFrames(f"no PNG/JPEG images in {path}")
    frames = [
        Frame(index=i, source_second=math.floor(i / rate), pixels=_read_image(f))
        for i, f in enumerate(files)
    ]
    return FrameSequence(frames, source_fps=rate, source_id=source_id or path.name)


def presample(seq: FrameSequence, rate_fps=1) -> FrameSequence:
    """Keep the first source frame of every ``1/rate_fps`` interval."""
    rate = parse_rate(rate_fps)
    if len(seq) == 0:
        raise NoFrames("cannot presample an empty sequence")
    if rate > seq.source_fps:
        raise InvalidRate(f"sampling rate {rate} exceeds source rate {seq.source_fps}")
    step = seq.source_fps / rate
    picked = []
    k = 0
    while True:
        src = math.floor(k * step)
        if src >= len(seq):
            break
        fr = seq[src]
        picked.append(Frame(index=k, source_second=fr.source_second, pixels=fr.pixels))
        k += 1
    return FrameSequence(picked, source_fps=rate, source_id=seq.source_id,
                         container_fps=seq.container_fps)


_FPS_RE = re.compile(r"Video:.*?(\d+(?:\.\d+)?)\s*fps")
_TBR_RE = re.compile(r"Video:.*?(\d+(?:\.\d+)?)\s*tbr")


def _container_fps(diagnostics: str) -> Fraction | None:
    for rx in (_FPS_RE, _TBR_RE):
        m = rx.search(diagnostics)
        if m:
            return parse_rate(m.group(1))
    return None


def decode_video(path, workdir, decoder=None, rate_fps=1) -> FrameSequence:
    """Explode a video into 1 fps PNGs with an external decoder and load them.

    The decoder executable defaults to ``$VSCAN_DECODER`` or ``ffmpeg`` and is
    called with ffmpeg-compatible arguments.
    """
    path = Path(path)
    workdir = Path(workdir)
    decoder = decoder or os.environ.get("VSCAN_DECODER") or DEFAULT_DECODER
    exe = shutil.which(decoder)
    if exe is None:
        raise DecoderUnavailable(f"video decoder {decoder!r} not found on PATH")
    if not path.is_file():
        raise DecodeError(f"no such video file: {path}")
    workdir.mkdir(parents=True, exist_ok=True)
    for stale in workdir.glob("frame_*.png"):
        stale.unlink()
    rate = parse_rate(rate_fps)
    cmd = [
        exe, "-hide_banner", "-nostdin", "-y",
        "-i", str(path),
        "-vf", f"fps={rate}",
        "-start_number", "0",
        str(workdir / "frame_%06d.png"),
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        tail = "\n".join(proc.stderr.strip().splitlines()[-20:])
        raise DecodeError(f"{decoder} exited with status {proc.returncode} on {path}:\n{tail}")
    seq = load_image_directory(workdir, fps=rate, source_id=path.stem)
    return FrameSequence(seq.frames, source_fps=rate, source_id=path.stem,
                         container_fps=_container_fps(proc.stderr))
