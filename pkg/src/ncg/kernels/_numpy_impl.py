"""Pure-numpy kernel backend (reference semantics for the numba path)."""
from __future__ import annotations

import numpy as np


def _consts():
    from . import U_INF, COST_INF, pair_count, pair_endpoints, expand_tables, popcount_table

    return U_INF, COST_INF, pair_count, pair_endpoints, expand_tables, popcount_table


def usage_sum_table(n: int) -> np.ndarray:
    """int32 (2^C(n,2), n): sum of hop distances per source, U_INF if cut off."""
    U_INF, _, pair_count, pair_endpoints, _, _ = _consts()
    p = pair_count(n)
    m = 1 << p
    pu, pv = pair_endpoints(n)
    masks = np.arange(m, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(p, dtype=np.int64)) & 1).astype(bool)
    adj = np.zeros((m, n, n), dtype=np.uint8)
    adj[:, pu, pv] = bits
    adj[:, pv, pu] = bits
    eye = np.eye(n, dtype=bool)
    reach = np.broadcast_to(eye, (m, n, n)).copy()
    dist = np.where(eye, 0, U_INF).astype(np.int64)
    dist = np.broadcast_to(dist, (m, n, n)).copy()
    for depth in range(1, n):
        nxt = np.matmul(reach.astype(np.uint8), adj) > 0
        new = nxt & ~reach
        if not new.any():
            break
        dist[new] = depth
        reach |= new
    usage = dist.sum(axis=2)
    usage = np.where(reach.all(axis=2), usage, U_INF)
    return usage.astype(np.int32)


def best_response_table(usage: np.ndarray, n: int, p: int, q: int) -> np.ndarray:
    """int64 (2^C(n,2), n): min scaled cost of player u against fixed other edges."""
    U_INF, COST_INF, _, _, expand_tables, popcount_table = _consts()
    m = usage.shape[0]
    expand = expand_tables(n)
    pc = popcount_table(1 << (n - 1))
    masks = np.arange(m, dtype=np.int64)
    out = np.full((m, n), COST_INF, dtype=np.int64)
    for u in range(n):
        best = np.full(m, COST_INF, dtype=np.int64)
        for t in range(1 << (n - 1)):
            uu = usage[masks | expand[u, t], u].astype(np.int64)
            c = np.where(uu >= U_INF, COST_INF, p * pc[t] + q * uu)
            np.minimum(best, c, out=best)
        out[:, u] = best
    return out


def scan_chunk(
    lo: int,
    hi: int,
    n: int,
    p: int,
    q: int,
    usage: np.ndarray,
    br: np.ndarray,
    expand: np.ndarray,
    pc: np.ndarray,
) -> np.ndarray:
    """NE vector indices in [lo, hi), ascending."""
    U_INF, COST_INF, _, _, _, _ = _consts()
    base = 1 << (n - 1)
    vecs = np.arange(lo, hi, dtype=np.int64)
    digits = np.empty((n, vecs.shape[0]), dtype=np.int64)
    tmp = vecs.copy()
    for u in range(n):
        digits[u] = tmp % base
        tmp //= base
    em = np.empty((n, vecs.shape[0]), dtype=np.int64)
    for u in range(n):
        em[u] = expand[u, digits[u]]
    # prefix/suffix ORs give each player's "edges bought by everyone else"
    pre = np.zeros((n + 1, vecs.shape[0]), dtype=np.int64)
    suf = np.zeros((n + 1, vecs.shape[0]), dtype=np.int64)
    for u in range(n):
        pre[u + 1] = pre[u] | em[u]
        suf[n - 1 - u] = suf[n - u] | em[n - 1 - u]
    full = pre[n]
    ok = np.ones(vecs.shape[0], dtype=bool)
    for u in range(n):
        uu = usage[full, u].astype(np.int64)
        cur = np.where(uu >= U_INF, COST_INF, p * pc[digits[u]] + q * uu)
        rest = pre[u] | suf[u + 1]
        ok &= cur <= br[rest, u]
    return vecs[ok]
