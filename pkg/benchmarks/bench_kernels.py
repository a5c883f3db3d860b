"""Benchmark the numba kernels against the pure-numpy fallback.

Run directly; it re-executes itself under NCG_NUMBA=1 and NCG_NUMBA=0 and
prints a timing table for the three kernels plus a full n=5 enumeration.
Numba timings exclude JIT compilation (one warm-up call per kernel).
"""
from __future__ import annotations

import os
import subprocess
import sys
import time


def bench_backend() -> None:
    from fractions import Fraction

    from ncg import kernels
    from ncg.search import EnumerationConfig, enumerate_nash

    label = "numba" if kernels.USING_NUMBA else "numpy"
    n = 5
    p, q = 11, 2  # alpha = 11/2

    kernels.usage_sum_table(3)  # warm-up (JIT compile on the numba path)
    t0 = time.perf_counter()
    usage = kernels.usage_sum_table(n)
    t_usage = time.perf_counter() - t0

    kernels.best_response_table(kernels.usage_sum_table(3), 3, p, q)
    t0 = time.perf_counter()
    br = kernels.best_response_table(usage, n, p, q)
    t_br = time.perf_counter() - t0

    expand = kernels.expand_tables(n)
    pc = kernels.popcount_table(1 << (n - 1))
    total = (1 << (n - 1)) ** n
    kernels.scan_chunk(0, 1 << 10, n, p, q, usage, br, expand, pc)
    t0 = time.perf_counter()
    res = kernels.scan_chunk(0, total, n, p, q, usage, br, expand, pc)
    t_scan = time.perf_counter() - t0

    t0 = time.perf_counter()
    cat = enumerate_nash(EnumerationConfig(n=n, alpha=Fraction(11, 2)))
    t_full = time.perf_counter() - t0

    print(f"backend={label}")
    print(f"  usage_sum_table(n={n})          {t_usage * 1e3:10.1f} ms")
    print(f"  best_response_table             {t_br * 1e3:10.1f} ms")
    print(f"  scan_chunk ({total} vectors)  {t_scan * 1e3:10.1f} ms  -> {len(res)} NE")
    print(f"  enumerate_nash end to end       {t_full * 1e3:10.1f} ms  -> {len(cat.entries)} NE")


def main() -> None:
    if os.environ.get("_NCG_BENCH_CHILD"):
        bench_backend()
        return
    for flag in ("1", "0"):
        env = dict(os.environ, NCG_NUMBA=flag, _NCG_BENCH_CHILD="1")
        subprocess.run([sys.executable, __file__], env=env, check=True)


if __name__ == "__main__":
    main()
