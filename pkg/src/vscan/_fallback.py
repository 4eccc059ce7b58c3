"""NumPy / pure-Python versions of the routines in ``_kernels.pyx``.

Signatures and results match the compiled module; only speed differs.
"""

from collections import deque

import numpy as np


def hsv_components(rgb):
    """Vectorized hexcone HSV of an ``(..., 3)`` array; hue in degrees."""
    rgb = np.asarray(rgb)
    if rgb.dtype.kind in "ui":
        rgb = rgb.astype(np.int64)
    else:
        rgb = rgb.astype(np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    mx = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    delta = mx - mn
    val = mx / 255.0
    with np.errstate(divide="ignore", invalid="ignore"):
        sat = np.where(mx > 0, delta / np.where(mx > 0, mx, 1), 0.0)
        safe = np.where(delta > 0, delta, 1)
        h_r = 60.0 * (g - b) / safe
        h_r = np.where(h_r < 0.0, h_r + 360.0, h_r)
        h_g = 60.0 * (b - r) / safe + 120.0
        h_b = 60.0 * (r - g) / safe + 240.0
    hue = np.where(mx == r, h_r, np.where(mx == g, h_g, h_b))
    hue = np.where(delta == 0, 0.0, hue)
    return hue.astype(np.float64), sat.astype(np.float64), val.astype(np.float64)


def hsv_histogram(rgb):
    hue, sat, val = hsv_components(rgb)
    hi = (hue / 360.0 * 32.0).astype(np.int64) % 32
    si = np.minimum((sat * 4.0).astype(np.int64), 3)
    vi = np.minimum((val * 2.0).astype(np.int64), 1)
    flat = (hi * 8 + si * 2 + vi).ravel()
    counts = np.bincount(flat, minlength=256)
    return counts / float(flat.size)


def expand_clusters(adj, minpts):
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    neighbors = [np.flatnonzero(adj[p]).tolist() for p in range(n)]
    core = [len(nb) >= minpts for nb in neighbors]
    labels = [0] * n
    cid = 0
    for p in range(n):
        if labels[p] != 0:
            continue
        if not core[p]:
            labels[p] = -1
            continue
        cid += 1
        labels[p] = cid
        queued = {p}
        todo = deque([p])
        while todo:
            q = todo.popleft()
            for r in neighbors[q]:
                if labels[r] <= 0:
                    labels[r] = cid
                if core[r] and r not in queued:
                    queued.add(r)
                    todo.append(r)
    return np.array(labels, dtype=np.int64), np.array(core, dtype=bool)
