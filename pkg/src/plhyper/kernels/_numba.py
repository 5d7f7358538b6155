"""numba-compiled kernels. Same signatures and results as ``_numpy``."""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _eval(bp, val, lo, hi, x):
    if x <= bp[lo]:
        return val[lo]
    if x >= bp[hi - 1]:
        return val[hi - 1]
    if hi - lo <= 9:
        # few pieces: a linear scan beats bisection
        a = lo
        while bp[a + 1] <= x:
            a += 1
    else:
        a, b = lo, hi - 1
        while b - a > 1:
            mid = (a + b) // 2
            if bp[mid] <= x:
                a = mid
            else:
                b = mid
    slope = (val[a + 1] - val[a]) / (bp[a + 1] - bp[a])
    return slope * (x - bp[a]) + val[a]


@njit(cache=True, nogil=True)
def orbit_table(bp, val, off, xs, n):
    p = off.shape[0] - 1
    m = xs.shape[0]
    out = np.empty((n + 1, m))
    for j in range(m):
        out[0, j] = xs[j]
    for k in range(1, n + 1):
        i = (k - 1) % p
        lo, hi = off[i], off[i + 1]
        for j in range(m):
            out[k, j] = _eval(bp, val, lo, hi, out[k - 1, j])
    return out


@njit(cache=True, nogil=True)
def sampled_diameters(bp, val, off, xs, horizon):
    table = orbit_table(bp, val, off, xs, horizon)
    out = np.empty(horizon)
    for k in range(1, horizon + 1):
        lo = table[k, 0]
        hi = table[k, 0]
        for j in range(1, xs.shape[0]):
            v = table[k, j]
            if v < lo:
                lo = v
            if v > hi:
                hi = v
        out[k - 1] = hi - lo
    return out


@njit(cache=True, nogil=True)
def sampled_hits(bp, val, off, xs, horizon, c, d):
    table = orbit_table(bp, val, off, xs, horizon)
    out = np.zeros(horizon, dtype=np.bool_)
    for k in range(1, horizon + 1):
        for j in range(xs.shape[0]):
            v = table[k, j]
            if c < v < d:
                out[k - 1] = True
                break
    return out


@njit(cache=True, nogil=True)
def tracer_mask(bp, val, off, ys, pts, eps):
    p = off.shape[0] - 1
    m = pts.shape[0] - 1
    out = np.empty(ys.shape[0], dtype=np.bool_)
    for j in range(ys.shape[0]):
        y = ys[j]
        ok = abs(y - pts[0]) <= eps
        k = 1
        while ok and k <= m:
            i = (k - 1) % p
            y = _eval(bp, val, off[i], off[i + 1], y)
            ok = abs(y - pts[k]) <= eps
            k += 1
        out[j] = ok
    return out


@njit(cache=True, nogil=True)
def _hausdorff_idx(u, v, idx, size):
    # d_H between the point set u and v[idx[:size]]
    fwd = 0.0
    for a in range(u.shape[0]):
        best = np.inf
        for s in range(size):
            dist = abs(u[a] - v[idx[s]])
            if dist < best:
                best = dist
        if best > fwd:
            fwd = best
    bwd = 0.0
    for s in range(size):
        best = np.inf
        for a in range(u.shape[0]):
            dist = abs(u[a] - v[idx[s]])
            if dist < best:
                best = dist
        if best > bwd:
            bwd = best
    return max(fwd, bwd)


@njit(cache=True, nogil=True)
def hyper_brute(bp, val, off, grid, a_pts, eps, delta, horizon, max_size, tol):
    g_orbit = orbit_table(bp, val, off, grid, horizon)
    a_orbit = orbit_table(bp, val, off, a_pts, horizon)
    g = grid.shape[0]
    found = np.zeros(horizon, dtype=np.bool_)
    idx = np.empty(max_size, dtype=np.int64)
    for size in range(1, min(max_size, g) + 1):
        for s in range(size):
            idx[s] = s
        while True:
            if _hausdorff_idx(a_pts, grid, idx, size) < eps - tol:
                for n in range(1, horizon + 1):
                    if not found[n - 1]:
                        if _hausdorff_idx(a_orbit[n], g_orbit[n], idx, size) > delta + tol:
                            found[n - 1] = True
            # next lexicographic combination
            s = size - 1
            while s >= 0 and idx[s] == g - size + s:
                s -= 1
            if s < 0:
                break
            idx[s] += 1
            for t in range(s + 1, size):
                idx[t] = idx[t - 1] + 1
    return found
