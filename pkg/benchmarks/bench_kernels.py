"""Compare the compiled kernels with the NumPy fallback.

    python benchmarks/bench_kernels.py [--frames 240] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from vscan import _backend, _fallback
from vscan.clustering import cluster
from vscan.features import FeatureDatabase, extract_features
from vscan.ingest import Frame


def _dists(rng, n, d):
    x = rng.gamma(0.3, size=(n, d))
    return x / x.sum(axis=1, keepdims=True)


def _using(mod, fn):
    """Run ``fn`` with the package's backend hooks pointed at ``mod``."""
    saved = _backend.hsv_histogram, _backend.expand_clusters
    _backend.hsv_histogram, _backend.expand_clusters = mod.hsv_histogram, mod.expand_clusters
    try:
        return fn()
    finally:
        _backend.hsv_histogram, _backend.expand_clusters = saved


def cases(n, rng):
    frame = rng.integers(0, 256, (240, 352, 3), dtype=np.uint8)
    adj = (rng.random((n, n)) < 0.05).astype(np.uint8)
    adj = np.triu(adj, 1)
    adj = np.ascontiguousarray(adj | adj.T)
    frames = [Frame(i, i, rng.integers(0, 256, (240, 352, 3), dtype=np.uint8)) for i in range(n)]
    db = FeatureDatabase(tuple(range(n)), _dists(rng, n, 256), _dists(rng, n, 192))
    return [
        ("hsv_histogram 352x240", lambda k: k.hsv_histogram(frame)),
        (f"expand_clusters n={n}", lambda k: k.expand_clusters(adj, 1)),
        (f"extract_features {n} frames", lambda k: _using(k, lambda: extract_features(frames, workers=1))),
        (f"cluster n={n}", lambda k: _using(k, lambda: cluster(db))),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--frames", type=int, default=240, help="sampled frames (240 = a 4 min video)")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _backend.BACKEND != "compiled":
        print("compiled kernels unavailable; only the fallback is timed")
    impls = [("python", _fallback)]
    if _backend.BACKEND == "compiled":
        impls.append(("compiled", _backend.kernels))

    rng = np.random.default_rng(0)
    header = f"{'kernel':<28}" + "".join(f"{name:>14}" for name, _ in impls)
    print(header + (f"{'speedup':>10}" if len(impls) == 2 else ""))
    for label, fn in cases(args.frames, rng):
        times = []
        for _, mod in impls:
            fn(mod)
            times.append(min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)))
        row = f"{label:<28}" + "".join(f"{t * 1e3:>11.2f} ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
