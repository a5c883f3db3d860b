"""Integer kernels for exhaustive strategy-space scans.

The enumeration hot path works on scaled integer costs: with alpha = p/q the
quantity q * c_u(s) = p*|s_u| + q*D(u) is an exact int64, so kernels never leave
integer arithmetic and verdicts match the Fraction-based slow path bit for bit.

Two interchangeable backends provide the same three functions:

* ``usage_sum_table(n)``        - D(u) for every undirected graph bitmask,
* ``best_response_table(...)``  - per (others-edges, player) minimal scaled cost,
* ``scan_chunk(...)``           - NE vector indices in an index range.

Backend selection: env var ``NCG_NUMBA`` = ``0`` forces the pure-numpy path,
``1`` requires numba, unset auto-detects.  ``benchmarks/bench_kernels.py``
compares the two.
"""
from __future__ import annotations

import os

import numpy as np

U_INF = 1 << 30  # usage-sum sentinel: some node unreachable
COST_INF = 1 << 62  # scaled-cost sentinel

MAX_TABLE_N = 7  # 2^C(n,2) table rows stay, at most, 2^21


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Bit index of undirected pair {i, j} (i < j) in a graph bitmask."""
    if i > j:
        i, j = j, i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pair_endpoints(n: int) -> tuple[np.ndarray, np.ndarray]:
    us, vs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            us.append(i)
            vs.append(j)
    return np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)


def others(u: int, n: int) -> list[int]:
    return [v for v in range(n) if v != u]


def expand_tables(n: int) -> np.ndarray:
    """(n, 2^(n-1)) int64: per-player map others-subset -> undirected pair mask."""
    b = 1 << (n - 1)
    table = np.zeros((n, b), dtype=np.int64)
    for u in range(n):
        oth = others(u, n)
        for t in range(b):
            mask = 0
            for k in range(n - 1):
                if t >> k & 1:
                    mask |= 1 << pair_index(u, oth[k], n)
            table[u, t] = mask
    return table


def popcount_table(size: int) -> np.ndarray:
    return np.array([bin(t).count("1") for t in range(size)], dtype=np.int64)


def encode_strategy(buys, n: int) -> int:
    """Strategy vector -> scan index (player 0 is the least significant digit)."""
    base = 1 << (n - 1)
    v = 0
    for u in range(n - 1, -1, -1):
        oth = others(u, n)
        digit = 0
        for k, w in enumerate(oth):
            if w in buys[u]:
                digit |= 1 << k
        v = v * base + digit
    return v


def decode_vector(v: int, n: int) -> list[frozenset[int]]:
    """Scan index -> per-player purchase sets."""
    base = 1 << (n - 1)
    buys = []
    for u in range(n):
        digit = v % base
        v //= base
        oth = others(u, n)
        buys.append(frozenset(oth[k] for k in range(n - 1) if digit >> k & 1))
    return buys


def _select_backend():
    flag = os.environ.get("NCG_NUMBA", "auto").strip().lower()
    if flag in ("0", "off", "no", "false"):
        from . import _numpy_impl as impl

        return impl, False
    if flag in ("1", "on", "yes", "true"):
        from . import _numba_impl as impl

        return impl, True
    try:
        from . import _numba_impl as impl

        return impl, True
    except ImportError:  # pragma: no cover - depends on environment
        from . import _numpy_impl as impl

        return impl, False


_impl, USING_NUMBA = _select_backend()

usage_sum_table = _impl.usage_sum_table
best_response_table = _impl.best_response_table
scan_chunk = _impl.scan_chunk
