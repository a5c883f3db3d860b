from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from ncg import kernels
from ncg.game_core import INF, GameConfig, StrategyVector, build_graph, usage_cost
from ncg.equilibrium import Exact, is_nash

from ncg.kernels import _numpy_impl

try:
    from ncg.kernels import _numba_impl
except ImportError:  # pragma: no cover
    _numba_impl = None

BACKENDS = [("numpy", _numpy_impl)] + ([("numba", _numba_impl)] if _numba_impl else [])


def test_pair_index_bijective():
    for n in range(2, 8):
        seen = {kernels.pair_index(i, j, n) for i in range(n) for j in range(i + 1, n)}
        assert seen == set(range(kernels.pair_count(n)))


def test_encode_decode_roundtrip():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randrange(2, 7)
        buys = [frozenset(v for v in range(n) if v != u and rng.randrange(2)) for u in range(n)]
        v = kernels.encode_strategy(buys, n)
        assert kernels.decode_vector(v, n) == list(buys)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_backends_agree(n):
    if _numba_impl is None:
        pytest.skip("numba unavailable")
    p, q = 7, 3
    u_np = _numpy_impl.usage_sum_table(n)
    u_nb = _numba_impl.usage_sum_table(n)
    assert (u_np == u_nb).all()
    b_np = _numpy_impl.best_response_table(u_np, n, p, q)
    b_nb = _numba_impl.best_response_table(u_nb, n, p, q)
    assert (b_np == b_nb).all()
    expand = kernels.expand_tables(n)
    pc = kernels.popcount_table(1 << (n - 1))
    total = min((1 << (n - 1)) ** n, 1 << 16)
    r_np = _numpy_impl.scan_chunk(0, total, n, p, q, u_np, b_np, expand, pc)
    r_nb = _numba_impl.scan_chunk(0, total, n, p, q, u_nb, b_nb, expand, pc)
    assert r_np.shape == r_nb.shape and (r_np == r_nb).all()


def test_usage_table_against_bfs_oracle():
    rng = random.Random(9)
    for n in (3, 4, 5):
        usage = kernels.usage_sum_table(n)
        pu, pv = kernels.pair_endpoints(n)
        for _ in range(60):
            mask = rng.randrange(usage.shape[0])
            buys = [set() for _ in range(n)]
            for b in range(len(pu)):
                if mask >> b & 1:
                    buys[int(pu[b])].add(int(pv[b]))
            g = build_graph(GameConfig(n, F(1)), StrategyVector.from_lists(buys))
            for u in range(n):
                expect = usage_cost(g, u)
                got = int(usage[mask, u])
                if got >= kernels.U_INF:
                    assert expect == INF
                else:
                    assert expect == got


@pytest.mark.parametrize("n,alpha", [(2, F(1, 2)), (3, F(2)), (3, F(1, 2)), (3, F(7, 3))])
def test_scan_matches_exact_path_fully(n, alpha):
    """Kernel NE verdicts equal the exact-Fraction verdicts on the whole space."""
    p, q = alpha.numerator, alpha.denominator
    usage = kernels.usage_sum_table(n)
    br = kernels.best_response_table(usage, n, p, q)
    expand = kernels.expand_tables(n)
    pc = kernels.popcount_table(1 << (n - 1))
    total = (1 << (n - 1)) ** n
    ne_ids = set(int(v) for v in kernels.scan_chunk(0, total, n, p, q, usage, br, expand, pc))
    cfg = GameConfig(n, alpha)
    for vec in range(total):
        s = StrategyVector(tuple(kernels.decode_vector(vec, n)))
        assert is_nash(cfg, s, Exact()).is_ne == (vec in ne_ids)


def test_scan_matches_exact_path_sampled_n4():
    n, alpha = 4, F(5, 2)
    p, q = alpha.numerator, alpha.denominator
    usage = kernels.usage_sum_table(n)
    br = kernels.best_response_table(usage, n, p, q)
    expand = kernels.expand_tables(n)
    pc = kernels.popcount_table(1 << (n - 1))
    total = (1 << (n - 1)) ** n
    ne_ids = set(int(v) for v in kernels.scan_chunk(0, total, n, p, q, usage, br, expand, pc))
    cfg = GameConfig(n, alpha)
    rng = random.Random(3)
    sample = set(rng.sample(range(total), 300)) | set(list(ne_ids)[:50])
    for vec in sample:
        s = StrategyVector(tuple(kernels.decode_vector(vec, n)))
        assert is_nash(cfg, s, Exact()).is_ne == (vec in ne_ids)


def test_chunked_scan_equals_single_scan():
    n, p, q = 4, 3, 2
    usage = kernels.usage_sum_table(n)
    br = kernels.best_response_table(usage, n, p, q)
    expand = kernels.expand_tables(n)
    pc = kernels.popcount_table(1 << (n - 1))
    total = (1 << (n - 1)) ** n
    whole = list(kernels.scan_chunk(0, total, n, p, q, usage, br, expand, pc))
    parts = []
    step = 977  # deliberately unaligned
    for lo in range(0, total, step):
        parts.extend(kernels.scan_chunk(lo, min(lo + step, total), n, p, q, usage, br, expand, pc))
    assert parts == whole
