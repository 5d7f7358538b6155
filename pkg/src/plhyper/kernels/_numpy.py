"""Pure-numpy kernels. Same signatures and results as ``_numba``."""

from itertools import combinations

import numpy as np


def _step(bp, val, off, i, xs):
    lo, hi = off[i], off[i + 1]
    return np.interp(xs, bp[lo:hi], val[lo:hi])


def orbit_table(bp, val, off, xs, n):
    p = len(off) - 1
    xs = np.asarray(xs, dtype=np.float64)
    out = np.empty((n + 1, xs.shape[0]))
    out[0] = xs
    for k in range(1, n + 1):
        out[k] = _step(bp, val, off, (k - 1) % p, out[k - 1])
    return out


def sampled_diameters(bp, val, off, xs, horizon):
    table = orbit_table(bp, val, off, xs, horizon)[1:]
    return table.max(axis=1) - table.min(axis=1)


def sampled_hits(bp, val, off, xs, horizon, c, d):
    table = orbit_table(bp, val, off, xs, horizon)[1:]
    return ((table > c) & (table < d)).any(axis=1)


def tracer_mask(bp, val, off, ys, pts, eps):
    m = len(pts) - 1
    table = orbit_table(bp, val, off, ys, m)
    dev = np.abs(table - np.asarray(pts, dtype=np.float64)[:, None])
    return (dev <= eps).all(axis=0)


def _directed(u, v):
    # max over u of min over v, batched on the leading axis
    return np.abs(u[..., :, None] - v[..., None, :]).min(axis=-1).max(axis=-1)


def hyper_brute(bp, val, off, grid, a_pts, eps, delta, horizon, max_size, tol):
    grid = np.asarray(grid, dtype=np.float64)
    a_pts = np.asarray(a_pts, dtype=np.float64)
    g_orbit = orbit_table(bp, val, off, grid, horizon)
    a_orbit = orbit_table(bp, val, off, a_pts, horizon)
    found = np.zeros(horizon, dtype=np.bool_)
    for size in range(1, max_size + 1):
        idx = np.array(list(combinations(range(grid.shape[0]), size)), dtype=np.int64)
        if idx.size == 0:
            continue
        b = grid[idx]
        a = np.broadcast_to(a_pts, (idx.shape[0], a_pts.shape[0]))
        close = np.maximum(_directed(a, b), _directed(b, a)) < eps - tol
        idx = idx[close]
        if idx.size == 0:
            continue
        for n in range(1, horizon + 1):
            if found[n - 1]:
                continue
            fb = g_orbit[n][idx]
            fa = np.broadcast_to(a_orbit[n], (idx.shape[0], a_pts.shape[0]))
            sep = np.maximum(_directed(fa, fb), _directed(fb, fa))
            if (sep > delta + tol).any():
                found[n - 1] = True
    return found
