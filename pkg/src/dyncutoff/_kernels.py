"""Compiled hot-path kernels for per-node cutoff values and distance gradients.

The math mirrors ``dyncut._node_cutoff`` exactly (tested for agreement);
loops are sequential in the graph's sorted edge order, so results are
deterministic and independent of thread settings.
"""

import numpy as np
from numba import njit

_SQRT_2PI = np.sqrt(2.0 * np.pi)


@njit(cache=True)
def _env(x, n):
    if x >= 1.0:
        return 0.0
    return (
        1.0
        - (n + 1.0) * (n + 2.0) / 2.0 * x**n
        + n * (n + 2.0) * x ** (n + 1)
        - n * (n + 1.0) / 2.0 * x ** (n + 2)
    )


@njit(cache=True)
def _env_d1(x, n):
    if x >= 1.0:
        return 0.0
    k = n * (n + 1.0) * (n + 2.0) / 2.0
    return -k * x ** (n - 1) * (1.0 - x) ** 2


@njit(cache=True)
def _sigmoid(x):
    if x >= 0.0:
        return 1.0 / (1.0 + np.exp(-x))
    e = np.exp(x)
    return e / (1.0 + e)


@njit(cache=True)
def pair_search(centers, ghosts, lo, edge, ncells, h):
    """All (center, ghost) pairs with 0 < distance <= h, via a 27-cell stencil.

    Ghost points must already lie within the binning box.  Returns parallel
    arrays (center index, ghost index, distance, displacement), ordered
    center-major; callers re-sort canonically.
    """
    n = centers.shape[0]
    m = ghosts.shape[0]
    nx, ny, nz = ncells[0], ncells[1], ncells[2]
    ntot = nx * ny * nz

    gcell = np.empty(m, dtype=np.int64)
    for g in range(m):
        cx = int((ghosts[g, 0] - lo[0]) / edge[0])
        cy = int((ghosts[g, 1] - lo[1]) / edge[1])
        cz = int((ghosts[g, 2] - lo[2]) / edge[2])
        if cx < 0:
            cx = 0
        elif cx >= nx:
            cx = nx - 1
        if cy < 0:
            cy = 0
        elif cy >= ny:
            cy = ny - 1
        if cz < 0:
            cz = 0
        elif cz >= nz:
            cz = nz - 1
        gcell[g] = (cx * ny + cy) * nz + cz

    counts = np.zeros(ntot, dtype=np.int64)
    for g in range(m):
        counts[gcell[g]] += 1
    starts = np.zeros(ntot + 1, dtype=np.int64)
    for c in range(ntot):
        starts[c + 1] = starts[c] + counts[c]
    order = np.empty(m, dtype=np.int64)
    fill = starts[:-1].copy()
    for g in range(m):
        order[fill[gcell[g]]] = g
        fill[gcell[g]] += 1

    h2 = h * h
    # pass 1: count matches, pass 2: fill
    total = 0
    out_center = np.empty(0, dtype=np.int64)
    out_ghost = np.empty(0, dtype=np.int64)
    out_r = np.empty(0)
    out_d = np.empty((0, 3))
    k = 0
    for ipass in range(2):
        if ipass == 1:
            out_center = np.empty(total, dtype=np.int64)
            out_ghost = np.empty(total, dtype=np.int64)
            out_r = np.empty(total)
            out_d = np.empty((total, 3))
        for i in range(n):
            cx = int((centers[i, 0] - lo[0]) / edge[0])
            cy = int((centers[i, 1] - lo[1]) / edge[1])
            cz = int((centers[i, 2] - lo[2]) / edge[2])
            for ox in range(-1, 2):
                ax = cx + ox
                if ax < 0 or ax >= nx:
                    continue
                for oy in range(-1, 2):
                    ay = cy + oy
                    if ay < 0 or ay >= ny:
                        continue
                    for oz in range(-1, 2):
                        az = cz + oz
                        if az < 0 or az >= nz:
                            continue
                        cid = (ax * ny + ay) * nz + az
                        for p in range(starts[cid], starts[cid + 1]):
                            g = order[p]
                            dx = ghosts[g, 0] - centers[i, 0]
                            dy = ghosts[g, 1] - centers[i, 1]
                            dz = ghosts[g, 2] - centers[i, 2]
                            r2 = dx * dx + dy * dy + dz * dz
                            if r2 > 0.0 and r2 <= h2:
                                if ipass == 0:
                                    total += 1
                                else:
                                    out_center[k] = i
                                    out_ghost[k] = g
                                    out_r[k] = np.sqrt(r2)
                                    out_d[k, 0] = dx
                                    out_d[k, 1] = dy
                                    out_d[k, 2] = dz
                                    k += 1
    return out_center, out_ghost, out_r, out_d


@njit(cache=True)
def cutoff_kernel(offsets, r, h, alpha, n_env, mu, sigma, eps, want_grad):
    """Cutoff c_v per node and, optionally, dc_dst/dr per edge."""
    n_nodes = offsets.shape[0] - 1
    c_out = np.empty(n_nodes)
    g_out = np.zeros(r.shape[0])
    n = float(n_env)
    for v in range(n_nodes):
        lo = offsets[v]
        hi = offsets[v + 1]
        m = hi - lo
        if m == 0:
            c_out[v] = h
            continue
        rv = r[lo:hi]
        pe = np.empty(m)
        pdx = np.empty(m)
        for k in range(m):
            x = rv[k] / h
            pe[k] = _env(x, n)
            pdx[k] = _env_d1(x, n)

        s_tab = np.zeros((m, m))
        s1_tab = np.zeros((m, m))
        for u in range(m):
            for t in range(u + 1, m):
                s = _sigmoid(alpha * (rv[u] - rv[t]))
                s_tab[u, t] = s
                s_tab[t, u] = 1.0 - s
                s1 = s * (1.0 - s)
                s1_tab[u, t] = s1
                s1_tab[t, u] = s1

        ranks = np.zeros(m)
        for u in range(m):
            acc = 0.0
            for t in range(m):
                acc += s_tab[u, t] * pe[t]
            ranks[u] = acc

        w = np.empty(m)
        w1 = np.empty(m)
        for u in range(m):
            z = (ranks[u] - mu) / sigma
            wu = np.exp(-0.5 * z * z) / (sigma * _SQRT_2PI)
            w[u] = wu
            w1[u] = -z / sigma * wu

        a_sum = 0.0
        b_sum = 0.0
        for k in range(m):
            a_sum += w[k] * pe[k] * rv[k]
            b_sum += w[k] * pe[k]
        denom = b_sum + eps
        a_til = a_sum + h * eps
        c_out[v] = a_til / denom

        if want_grad:
            d_diag = np.empty(m)
            for u in range(m):
                acc = 0.0
                for t in range(m):
                    acc += s1_tab[u, t] * pe[t]
                d_diag[u] = alpha * acc
            for k in range(m):
                a_k = w[k] * (pe[k] + rv[k] * pdx[k] / h)
                b_k = w[k] * pdx[k] / h
                for u in range(m):
                    if u == k:
                        duk = d_diag[k]
                    else:
                        duk = -alpha * s1_tab[u, k] * pe[k] + s_tab[u, k] * pdx[k] / h
                    a_k += w1[u] * pe[u] * rv[u] * duk
                    b_k += w1[u] * pe[u] * duk
                g_out[lo + k] = a_k / denom - a_til * b_k / denom / denom
    return c_out, g_out
