from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ncg.game_core import GameConfig, StrategyVector, build_graph


def make(n, alpha, buys):
    cfg = GameConfig(n, Fraction(alpha))
    s = StrategyVector.from_lists(buys)
    return cfg, s, build_graph(cfg, s)


def random_owned(n: int, rng: random.Random, num=2, den=None) -> StrategyVector:
    """Owned G(n, num/den) graph; defaults to expected degree ~2."""
    den = den or n
    buys = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.randrange(den) < num:
                if rng.randrange(2):
                    buys[j].add(i)
                else:
                    buys[i].add(j)
    return StrategyVector.from_lists(buys)


def random_connected(n: int, seed, num=2, den=None, max_tries=200) -> StrategyVector:
    """Deterministic connected random owned graph (rejection sampling)."""
    for attempt in range(max_tries):
        rng = random.Random(f"{seed}:{attempt}")
        s = random_owned(n, rng, num, den)
        cfg = GameConfig(n, Fraction(1))
        if build_graph(cfg, s).connected():
            return s
    raise RuntimeError(f"no connected sample for n={n} seed={seed}")


# deterministic fixture: theta graph, hubs 0 and 1, legs of 2, 2, 3 edges
THETA_BUYS = [[2, 3, 4], [], [1], [1], [5], [1]]


@pytest.fixture
def theta():
    return make(6, 5, THETA_BUYS)


# two 4-cycles sharing the edge u-v: u=0, v=1, w=2, a=3, b=4, c=5
FUSED_CYCLES_BUYS = [[1, 2, 5], [3, 4], [3], [], [5], []]


@pytest.fixture
def fused_cycles():
    return make(6, 1, FUSED_CYCLES_BUYS)
