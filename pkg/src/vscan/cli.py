"""``vscan`` command line: summarize, evaluate, batch-eval."""

from __future__ import annotations

import argparse
import logging
import sys
import tempfile
from pathlib import Path

from . import __version__
from .cache import cache_features, content_key, load_cached
from .clustering import ClusteringParams, Mode, cluster
from .errors import CacheVersionError, IoError, VscanError
from .evaluator import batch_evaluate, evaluate, load_summary_frames
from .features import extract_features
from .ingest import decode_video, load_image_directory, parse_rate, presample
from .similarity import DEFAULT_EPS, SimilarityThresholds
from .summarizer import select_keyframes, write_summary

log = logging.getLogger("vscan")


def _thresholds(args) -> SimilarityThresholds:
    return SimilarityThresholds(args.eps_color, args.eps_texture)


def clustering_params(args) -> ClusteringParams:
    return ClusteringParams(_thresholds(args), eps=args.eps, minpts=args.minpts, mode=Mode(args.mode))


def load_input(args):
    """Frames sampled at 1 fps from a directory or a video file."""
    src = Path(args.input)
    if src.is_dir():
        seq = load_image_directory(src, fps=args.fps or 1)
        return presample(seq, 1) if seq.source_fps > 1 else seq
    if not src.exists():
        raise IoError(f"input not found: {src}")
    if args.workdir:
        return decode_video(src, args.workdir, decoder=args.decoder)
    with tempfile.TemporaryDirectory(prefix="vscan-") as tmp:
        return decode_video(src, tmp, decoder=args.decoder)


def features_for(seq, cache_path):
    if cache_path is None:
        return extract_features(seq.frames)
    key = content_key(seq.frames)
    if Path(cache_path).is_file():
        try:
            db = load_cached(cache_path, key)
            log.info("loaded features from %s", cache_path)
            return db
        except CacheVersionError as exc:
            log.info("recomputing features: %s", exc)
    db = extract_features(seq.frames)
    cache_features(db, cache_path, key)
    return db


def cmd_summarize(args) -> int:
    params = clustering_params(args)
    seq = load_input(args)
    db = features_for(seq, args.cache)
    assignment = cluster(db, params)
    summary = select_keyframes(assignment, db.indices, source_id=seq.source_id, params=params)
    manifest = write_summary(summary, seq.frames, args.out)
    print(f"keyframes: {len(summary)}")
    print(f"noise frames: {summary.n_noise}")
    print(f"manifest: {manifest}")
    return 0


def cmd_evaluate(args) -> int:
    report = evaluate(load_summary_frames(args.auto), load_summary_frames(args.user), _thresholds(args))
    print(f"n_auto: {report.n_auto}")
    print(f"n_user: {report.n_user}")
    print(f"n_matched: {report.n_matched}")
    print(f"precision: {report.precision:.6f}")
    print(f"recall: {report.recall:.6f}")
    print(f"f_measure: {report.f_measure:.6f}")
    return 0


def cmd_batch_eval(args) -> int:
    result = batch_evaluate(args.manifest, args.out, _thresholds(args))
    if args.out is None:
        sys.stdout.write(result.to_csv())
    else:
        for vid, mean_f in result.video_means.items():
            print(f"{vid}: mean F = {mean_f:.6f}")
        print(f"corpus mean F = {result.corpus_mean:.6f} over {len(result.video_means)} videos")
    return 0


def build_parser() -> argparse.ArgumentParser:
    thresholds = argparse.ArgumentParser(add_help=False)
    thresholds.add_argument("--eps-color", type=float, default=DEFAULT_EPS,
                            help="color coefficient threshold (default %(default)s)")
    thresholds.add_argument("--eps-texture", type=float, default=DEFAULT_EPS,
                            help="texture coefficient threshold (default %(default)s)")

    parser = argparse.ArgumentParser(prog="vscan", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("summarize", parents=[thresholds], help="build a static summary")
    s.add_argument("--input", required=True, help="image directory or video file")
    s.add_argument("--out", default="vscan-summary", help="output directory")
    s.add_argument("--fps", type=parse_rate, default=None,
                   help="native rate of an image directory (default 1, already sampled)")
    s.add_argument("--workdir", default=None, help="where decoded frames are written")
    s.add_argument("--decoder", default=None, help="decoder executable (overrides $VSCAN_DECODER)")
    s.add_argument("--eps", type=int, choices=(0, 1, 2), default=2)
    s.add_argument("--minpts", type=int, default=1)
    s.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.DUAL.value)
    s.add_argument("--cache", default=None, help="feature cache file")
    s.set_defaults(func=cmd_summarize)

    e = sub.add_parser("evaluate", parents=[thresholds], help="score one summary against one user summary")
    e.add_argument("--auto", required=True)
    e.add_argument("--user", required=True)
    e.set_defaults(func=cmd_evaluate)

    b = sub.add_parser("batch-eval", parents=[thresholds], help="score a corpus listed in a manifest")
    b.add_argument("--manifest", required=True)
    b.add_argument("--out", default=None, help="CSV path (default: standard output)")
    b.set_defaults(func=cmd_batch_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except VscanError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
