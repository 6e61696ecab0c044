"""Array kernels behind the graph and subset-dictionary layers.

Every kernel has two implementations: a numba-compiled one and a numpy
fallback.  The module-level names resolve to one of them according to
:mod:`locount._accel`; both are importable under explicit names so the
benchmark and the tests can compare them directly.
"""
import heapq

import numpy as np

from ._accel import NUMBA_ENABLED, njit, select

__all__ = [
    "peel_order",
    "left_csr",
    "superset_mobius",
    "superset_zeta",
    "trace_masks",
    "NUMBA_ENABLED",
]


# --- smallest-last peeling -------------------------------------------------

def _peel_body(indptr, indices, n):
    deg = np.empty(n, np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
    removed = np.zeros(n, np.bool_)
    removal = np.empty(n, np.int64)
    at_removal = np.empty(n, np.int64)
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    k = 0
    while k < n:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        removal[k] = v
        at_removal[k] = dv
        k += 1
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return removal, at_removal


_peel_jit = njit(_peel_body)


def peel_order_numpy(indptr, indices, n):
    heap = [(int(indptr[v + 1] - indptr[v]), v) for v in range(n)]
    deg = [d for d, _ in heap]
    heapq.heapify(heap)
    removed = np.zeros(n, dtype=bool)
    removal = np.empty(n, dtype=np.int64)
    at_removal = np.empty(n, dtype=np.int64)
    k = 0
    while k < n:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        removal[k] = v
        at_removal[k] = dv
        k += 1
        for u in indices[indptr[v]:indptr[v + 1]].tolist():
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return removal, at_removal


def peel_order_numba(indptr, indices, n):
    if n == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return _peel_jit(indptr, indices, n)


def peel_order(indptr, indices, n):
    """Smallest-last removal sequence and the degree of each vertex when removed.

    Among minimum-degree vertices the lowest index is removed first.
    """
    return select(peel_order_numba, peel_order_numpy)(indptr, indices, n)


# --- left-neighbourhood CSR ------------------------------------------------

@njit
def _left_csr_jit(indptr, indices, position):
    n = indptr.shape[0] - 1
    counts = np.zeros(n + 1, np.int64)
    for v in range(n):
        pv = position[v]
        c = 0
        for p in range(indptr[v], indptr[v + 1]):
            if position[indices[p]] < pv:
                c += 1
        counts[v + 1] = c
    lptr = np.cumsum(counts)
    lidx = np.empty(lptr[n], np.int64)
    for v in range(n):
        pv = position[v]
        w = lptr[v]
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            if position[u] < pv:
                lidx[w] = u
                w += 1
    return lptr, lidx


def left_csr_numpy(indptr, indices, position):
    n = indptr.shape[0] - 1
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    keep = position[indices] < position[src]
    lidx = indices[keep].astype(np.int64)
    counts = np.bincount(src[keep], minlength=n)
    lptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=lptr[1:])
    return lptr, lidx


def left_csr(indptr, indices, position):
    """CSR arrays of left neighbourhoods, each row sorted by vertex index."""
    return select(_left_csr_jit, left_csr_numpy)(indptr, indices, position)


# --- superset transforms over 2^s tables -----------------------------------

@njit
def _mobius_jit(table, s):
    m, width = table.shape
    for i in range(s):
        bit = 1 << i
        for r in range(m):
            for mask in range(width):
                if not mask & bit:
                    table[r, mask] -= table[r, mask | bit]
    return table


@njit
def _zeta_jit(table, s):
    m, width = table.shape
    for i in range(s):
        bit = 1 << i
        for r in range(m):
            for mask in range(width):
                if not mask & bit:
                    table[r, mask] += table[r, mask | bit]
    return table


def _butterfly_numpy(table, s, sign):
    m = table.shape[0]
    for i in range(s):
        view = table.reshape(m, 1 << (s - i - 1), 2, 1 << i)
        view[:, :, 0, :] += sign * view[:, :, 1, :]
    return table


def mobius_numpy(table, s):
    return _butterfly_numpy(table, s, -1)


def zeta_numpy(table, s):
    return _butterfly_numpy(table, s, 1)


def superset_mobius(table, s):
    """In place: turn superset-containment counts into exact counts.

    ``table`` has shape ``(m, 2**s)``; row ``r`` at ``mask`` becomes
    ``sum over masks Y containing mask of (-1)^{|Y - mask|} table[r, Y]``.
    """
    return select(_mobius_jit, mobius_numpy)(table, s)


def superset_zeta(table, s):
    """Inverse of :func:`superset_mobius` (sum over supersets), in place."""
    return select(_zeta_jit, zeta_numpy)(table, s)


# --- neighbourhood traces --------------------------------------------------

@njit
def _trace_masks_jit(indptr, indices, anchor, candidates):
    out = np.zeros(candidates.shape[0], np.int64)
    for c in range(candidates.shape[0]):
        v = candidates[c]
        lo = indptr[v]
        hi = indptr[v + 1]
        for j in range(anchor.shape[0]):
            a = anchor[j]
            k = np.searchsorted(indices[lo:hi], a)
            if k < hi - lo and indices[lo + k] == a:
                out[c] |= 1 << j
    return out


def trace_masks_numpy(indptr, indices, anchor, candidates):
    out = np.zeros(candidates.shape[0], dtype=np.int64)
    for j, a in enumerate(anchor.tolist()):
        nbrs = indices[indptr[a]:indptr[a + 1]]
        out[np.isin(candidates, nbrs)] |= 1 << j
    return out


def trace_masks(indptr, indices, anchor, candidates):
    """Bit ``j`` of result ``c`` is set iff ``candidates[c]`` is adjacent to ``anchor[j]``."""
    return select(_trace_masks_jit, trace_masks_numpy)(indptr, indices, anchor, candidates)


KERNEL_PAIRS = {
    "peel_order": (peel_order_numba, peel_order_numpy),
    "left_csr": (_left_csr_jit, left_csr_numpy),
    "superset_mobius": (_mobius_jit, mobius_numpy),
    "trace_masks": (_trace_masks_jit, trace_masks_numpy),
}
