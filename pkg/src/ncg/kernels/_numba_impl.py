"""Numba kernel backend; mirrors _numpy_impl semantics exactly."""
from __future__ import annotations

import numpy as np
from numba import njit

U_INF = 1 << 30
COST_INF = 1 << 62


@njit(cache=True, nogil=True)
def _usage_from(adj, n, src):
    seen = 1 << src
    frontier = seen
    depth = 0
    total = 0
    reached = 1
    while frontier != 0:
        nxt = 0
        for v in range(n):
            if frontier >> v & 1:
                nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
        depth += 1
        for v in range(n):
            if frontier >> v & 1:
                total += depth
                reached += 1
    if reached < n:
        return U_INF
    return total


@njit(cache=True, nogil=True)
def _usage_sum_table(n, pu, pv):
    p = pu.shape[0]
    m = 1 << p
    out = np.empty((m, n), dtype=np.int32)
    adj = np.zeros(n, dtype=np.int64)
    for mask in range(m):
        for v in range(n):
            adj[v] = 0
        for b in range(p):
            if mask >> b & 1:
                adj[pu[b]] |= 1 << pv[b]
                adj[pv[b]] |= 1 << pu[b]
        for src in range(n):
            out[mask, src] = _usage_from(adj, n, src)
    return out


def usage_sum_table(n: int) -> np.ndarray:
    from . import pair_endpoints

    pu, pv = pair_endpoints(n)
    return _usage_sum_table(n, pu, pv)


@njit(cache=True, nogil=True)
def _best_response_table(usage, n, p, q, expand, pc):
    m = usage.shape[0]
    b = 1 << (n - 1)
    out = np.empty((m, n), dtype=np.int64)
    for mask in range(m):
        for u in range(n):
            best = COST_INF
            for t in range(b):
                uu = usage[mask | expand[u, t], u]
                if uu < U_INF:
                    c = p * pc[t] + q * uu
                    if c < best:
                        best = c
            out[mask, u] = best
    return out


def best_response_table(usage: np.ndarray, n: int, p: int, q: int) -> np.ndarray:
    from . import expand_tables, popcount_table

    return _best_response_table(usage, n, p, q, expand_tables(n), popcount_table(1 << (n - 1)))


@njit(cache=True, nogil=True)
def scan_chunk(lo, hi, n, p, q, usage, br, expand, pc):
    base = 1 << (n - 1)
    out = np.empty(hi - lo, dtype=np.int64)
    cnt = 0
    digits = np.empty(n, dtype=np.int64)
    em = np.empty(n, dtype=np.int64)
    tmp = lo
    for u in range(n):
        digits[u] = tmp % base
        tmp //= base
        em[u] = expand[u, digits[u]]
    for vec in range(lo, hi):
        full = 0
        for u in range(n):
            full |= em[u]
        is_ne = True
        for u in range(n):
            uu = usage[full, u]
            if uu >= U_INF:
                is_ne = False
                break
            cur = p * pc[digits[u]] + q * uu
            rest = 0
            for w in range(n):
                if w != u:
                    rest |= em[w]
            if cur > br[rest, u]:
                is_ne = False
                break
        if is_ne:
            out[cnt] = vec
            cnt += 1
        u = 0
        while u < n:
            digits[u] += 1
            if digits[u] == base:
                digits[u] = 0
                em[u] = expand[u, 0]
                u += 1
            else:
                em[u] = expand[u, digits[u]]
                break
    return out[:cnt].copy()
