"""Compiled inner loops: bitmask DPs over paths/cycles and the labeling sweeps.

All kernels take plain numpy arrays.  ``adj`` is an ``n x n`` boolean matrix and
``w`` the matching ``int8`` matrix of labels (0 off the edge set).
"""

from __future__ import annotations

import numpy as np
from numba import njit

NEG_INF = np.int16(-32000)
POS_INF = np.int16(32000)


@njit(cache=True)
def _popcount(x):
    x = np.uint64(x)
    c = 0
    while x:
        x &= x - np.uint64(1)
        c += 1
    return c


@njit(cache=True)
def cycle_dp(n, adj, w):
    """Max/min label sum of paths from vertex 0 over subsets of ``1..n-1``.

    ``hi[mask, j]`` is the best sum of a path starting at 0, visiting exactly the
    vertices ``{0} | {i+1 : bit i of mask}`` and ending at ``j + 1``.
    """
    k = n - 1
    size = 1 << k
    hi = np.full((size, k), NEG_INF, dtype=np.int16)
    lo = np.full((size, k), POS_INF, dtype=np.int16)
    for j in range(k):
        if adj[0, j + 1]:
            hi[1 << j, j] = w[0, j + 1]
            lo[1 << j, j] = w[0, j + 1]
    for mask in range(1, size):
        for j in range(k):
            if not (mask >> j) & 1:
                continue
            h = hi[mask, j]
            if h == NEG_INF:
                continue
            l = lo[mask, j]
            for t in range(k):
                if (mask >> t) & 1 or not adj[j + 1, t + 1]:
                    continue
                nm = mask | (1 << t)
                x = w[j + 1, t + 1]
                if h + x > hi[nm, t]:
                    hi[nm, t] = h + x
                if l + x < lo[nm, t]:
                    lo[nm, t] = l + x
    return hi, lo


@njit(cache=True)
def path_dp(n, adj, w):
    """Max/min label sum of paths over every vertex subset, indexed by end vertex."""
    size = 1 << n
    hi = np.full((size, n), NEG_INF, dtype=np.int16)
    lo = np.full((size, n), POS_INF, dtype=np.int16)
    for j in range(n):
        hi[1 << j, j] = 0
        lo[1 << j, j] = 0
    for mask in range(1, size):
        for j in range(n):
            if not (mask >> j) & 1:
                continue
            h = hi[mask, j]
            if h == NEG_INF:
                continue
            l = lo[mask, j]
            for t in range(n):
                if (mask >> t) & 1 or not adj[j, t]:
                    continue
                nm = mask | (1 << t)
                x = w[j, t]
                if h + x > hi[nm, t]:
                    hi[nm, t] = h + x
                if l + x < lo[nm, t]:
                    lo[nm, t] = l + x
    return hi, lo


@njit(cache=True, nogil=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True, nogil=True)
def sweep_spanning_trees(n, eu, ev, lo, hi, fix_first):
    """Minimise ``n + 1 - 2 * min(c+, c-)`` over sweep indices ``lo..hi-1``.

    ``c+``/``c-`` count the components of the positive/negative spanning
    subgraphs; the expression is the largest ``|f(T)|`` over spanning trees.
    Returns ``(best value, first index attaining it)``.
    """
    m = eu.shape[0]
    pp = np.empty(n, dtype=np.int32)
    pn = np.empty(n, dtype=np.int32)
    best = n + 1
    best_idx = -1
    shift = 1 if fix_first else 0
    for idx in range(lo, hi):
        neg = np.uint64(idx) << np.uint64(shift)
        for v in range(n):
            pp[v] = v
            pn[v] = v
        cp = n
        cn = n
        for e in range(m):
            a = eu[e]
            b = ev[e]
            if (neg >> np.uint64(e)) & np.uint64(1):
                ra = _find(pn, a)
                rb = _find(pn, b)
                if ra != rb:
                    pn[rb] = ra
                    cn -= 1
            else:
                ra = _find(pp, a)
                rb = _find(pp, b)
                if ra != rb:
                    pp[rb] = ra
                    cp -= 1
        c = cp if cp < cn else cn
        val = n + 1 - 2 * c
        if val < best:
            best = val
            best_idx = idx
    return best, best_idx


@njit(cache=True, nogil=True)
def sweep_members(masks, sizes, lo, hi, fix_first):
    """Minimise ``max_A |f(A)|`` over sweep indices for explicit member edge masks."""
    best = 1 << 30
    best_idx = -1
    shift = 1 if fix_first else 0
    k = masks.shape[0]
    for idx in range(lo, hi):
        neg = np.uint64(idx) << np.uint64(shift)
        worst = 0
        for i in range(k):
            s = sizes[i] - 2 * _popcount(masks[i] & neg)
            if s < 0:
                s = -s
            if s > worst:
                worst = s
                if worst >= best:
                    break
        if worst < best:
            best = worst
            best_idx = idx
    return best, best_idx


@njit(cache=True)
def boundary_sizes(n, adjmask):
    """``|N(S) minus S|`` for every vertex subset ``S`` of an ``n``-vertex graph."""
    size = 1 << n
    out = np.empty(size, dtype=np.int8)
    nb = np.zeros(size, dtype=np.int64)
    for mask in range(1, size):
        low = mask & -mask
        v = 0
        while (low >> v) != 1:
            v += 1
        nb[mask] = nb[mask ^ low] | adjmask[v]
    for mask in range(size):
        out[mask] = _popcount(nb[mask] & ~mask)
    return out
