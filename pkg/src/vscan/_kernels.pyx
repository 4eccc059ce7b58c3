# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. ``vscan._fallback`` mirrors every function here."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def hsv_histogram(const unsigned char[:, :, ::1] rgb):
    cdef Py_ssize_t h = rgb.shape[0], w = rgb.shape[1], i, j
    cdef int r, g, b, mx, mn, delta, hi, si, vi
    cdef double hue, sat, val
    counts = np.zeros(256, dtype=np.int64)
    cdef cnp.int64_t[::1] c = counts
    for i in range(h):
        for j in range(w):
            r = rgb[i, j, 0]
            g = rgb[i, j, 1]
            b = rgb[i, j, 2]
            mx = r
            if g > mx:
                mx = g
            if b > mx:
                mx = b
            mn = r
            if g < mn:
                mn = g
            if b < mn:
                mn = b
            delta = mx - mn
            val = mx / 255.0
            sat = (<double>delta) / mx if mx > 0 else 0.0
            if delta == 0:
                hue = 0.0
            elif mx == r:
                hue = 60.0 * (g - b) / delta
                if hue < 0.0:
                    hue += 360.0
            elif mx == g:
                hue = 60.0 * (b - r) / delta + 120.0
            else:
                hue = 60.0 * (r - g) / delta + 240.0
            hi = (<int>(hue / 360.0 * 32.0)) % 32
            si = <int>(sat * 4.0)
            if si > 3:
                si = 3
            vi = <int>(val * 2.0)
            if vi > 1:
                vi = 1
            c[hi * 8 + si * 2 + vi] += 1
    return counts / <double>(h * w)


def expand_clusters(const unsigned char[:, ::1] adj, Py_ssize_t minpts):
    """Label frames from a symmetric, zero-diagonal adjacency matrix.

    Returns ``(labels, core)``; labels are 1.. for clusters and -1 for noise.
    """
    cdef Py_ssize_t n = adj.shape[0], p, q, r, head, tail
    cdef cnp.int64_t cid = 0
    labels = np.zeros(n, dtype=np.int64)
    core = np.zeros(n, dtype=np.uint8)
    queue = np.empty(max(n, 1), dtype=np.intp)
    queued = np.zeros(n, dtype=np.uint8)
    cdef cnp.int64_t[::1] lab = labels
    cdef unsigned char[::1] cor = core
    cdef Py_ssize_t[::1] qu = queue
    cdef unsigned char[::1] inq = queued
    cdef Py_ssize_t deg

    with nogil:
        for p in range(n):
            deg = 0
            for q in range(n):
                deg += adj[p, q]
            cor[p] = deg >= minpts

        # 0 = unvisited, -1 = noise (may later be claimed as border)
        for p in range(n):
            if lab[p] != 0:
                continue
            if not cor[p]:
                lab[p] = -1
                continue
            cid += 1
            lab[p] = cid
            head = 0
            tail = 0
            inq[p] = 1
            qu[tail] = p
            tail += 1
            while head < tail:
                q = qu[head]
                head += 1
                for r in range(n):
                    if not adj[q, r]:
                        continue
                    if lab[r] <= 0:
                        lab[r] = cid
                    if cor[r] and not inq[r]:
                        inq[r] = 1
                        qu[tail] = r
                        tail += 1
    return labels, core.astype(bool)
