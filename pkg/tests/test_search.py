from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from ncg import kernels
from ncg.asets import GuardError
from ncg.equilibrium import Exact, is_nash
from ncg.game_core import GameConfig, StrategyVector, ValidationError, build_graph, cost
from ncg.search import (
    EnumerationConfig,
    canonical_form,
    enumerate_nash,
    isomorphism_dedup,
    load_catalog,
    optimum_social_cost,
    poa_exact,
    save_catalog,
    tree_conjecture_sweep,
)
from ncg.structure import is_tree


def test_enumerate_n2_exactly_one_edge():
    cat = enumerate_nash(EnumerationConfig(n=2, alpha=F(1, 2)))
    assert {s.owned_edges()[0] for s in cat.entries} == {(0, 1), (1, 0)}
    assert all(len(s.owned_edges()) == 1 for s in cat.entries)


def test_enumerate_n3_stars_and_triangle():
    cat = enumerate_nash(EnumerationConfig(n=3, alpha=F(2)))
    assert cat.entries and all(len(s.owned_edges()) == 2 for s in cat.entries)
    cat = enumerate_nash(EnumerationConfig(n=3, alpha=F(1, 2)))
    shapes = {frozenset((min(a, b), max(a, b)) for a, b in s.owned_edges()) for s in cat.entries}
    assert shapes == {frozenset({(0, 1), (0, 2), (1, 2)})}
    assert len(cat.entries) == 8  # all ownership orientations of the triangle


def test_enumerate_n1_trivial():
    cat = enumerate_nash(EnumerationConfig(n=1, alpha=F(3)))
    assert len(cat.entries) == 1 and cat.entries[0].buys == (frozenset(),)


def test_enumerate_budget_refusal_names_requirement():
    with pytest.raises(GuardError, match="requires budget >= "):
        enumerate_nash(EnumerationConfig(n=7, alpha=F(2)))


def test_enumerate_threads_deterministic():
    a = enumerate_nash(EnumerationConfig(n=5, alpha=F(3, 2)), threads=1)
    b = enumerate_nash(EnumerationConfig(n=5, alpha=F(3, 2)), threads=4)
    assert a.entries == b.entries


def test_optimum_examples():
    opt, w = optimum_social_cost(3, F(3))
    assert opt == 14 and is_tree(build_graph(GameConfig(3, F(3)), w))
    opt, _ = optimum_social_cost(3, F(1))
    assert opt == 9
    opt, _ = optimum_social_cost(2, F(7, 2))
    assert opt == F(7, 2) + 2
    opt, _ = optimum_social_cost(1, F(7, 2))
    assert opt == 0


def test_optimum_matches_raw_bruteforce():
    # independent oracle: min over every strategy vector via exact costs
    for n, alpha in [(3, F(1, 2)), (3, F(5, 2)), (4, F(2))]:
        cfg = GameConfig(n, alpha)
        best = None
        total = (1 << (n - 1)) ** n
        for vec in range(total):
            s = StrategyVector(tuple(kernels.decode_vector(vec, n)))
            c = cost(cfg, build_graph(cfg, s)).social
            if best is None or c < best:
                best = c
        opt, _ = optimum_social_cost(n, alpha)
        assert opt == best


def test_poa_degenerate_single_player():
    est = poa_exact(1, F(2))
    assert est.poa == 1 and est.opt_cost == 0


def test_poa_table_examples():
    est = poa_exact(4, F(3, 2))
    assert est.poa <= F(4, 3)
    assert any(b[0] == "alpha in (1,2)" and b[2] for b in est.reference_bounds)
    est = poa_exact(4, F(1, 2))
    assert est.poa == 1
    est = poa_exact(4, F(9, 2))
    assert est.poa < 5
    assert est.exact


def test_sweep_examples():
    pts = [(n, F(2 * n)) for n in (2, 3, 4)] + [(4, F(1, 2))]
    rep = tree_conjecture_sweep(pts)
    for pt in rep:
        assert not pt.falsifies
    low = rep[-1]
    assert low.alpha == F(1, 2) and not low.conjecture_applies
    assert low.ne_count > low.tree_count  # non-tree equilibria exist below alpha = n


def test_exhaustive_superset_of_brd():
    for seed in (0, 1):
        for alpha in (F(3, 2), F(5)):
            ex = enumerate_nash(EnumerationConfig(n=4, alpha=alpha))
            brd = enumerate_nash(
                EnumerationConfig(n=4, alpha=alpha, mode="brd", seed=seed, starts=12, max_steps=60)
            )
            assert brd.entries and set(brd.entries) <= set(ex.entries)
            assert brd.provenance == "brd"


def test_brd_deterministic_by_seed():
    a = enumerate_nash(EnumerationConfig(n=5, alpha=F(2), mode="brd", seed=7, starts=8))
    b = enumerate_nash(EnumerationConfig(n=5, alpha=F(2), mode="brd", seed=7, starts=8))
    c = enumerate_nash(EnumerationConfig(n=5, alpha=F(2), mode="brd", seed=8, starts=8))
    assert a.entries == b.entries
    assert all(is_nash(GameConfig(5, F(2)), s, Exact()).is_ne for s in c.entries)


def test_canonical_form_relabeling():
    n = 3
    stars = [
        StrategyVector.from_lists([[1, 2], [], []]),
        StrategyVector.from_lists([[], [0, 2], []]),
        StrategyVector.from_lists([[], [], [0, 1]]),
    ]
    forms = {canonical_form(s, n) for s in stars}
    assert len(forms) == 1
    # ownership orientation distinguishes classes
    path_fwd = StrategyVector.from_lists([[1], [2], []])
    path_mid = StrategyVector.from_lists([[], [0, 2], []])
    assert canonical_form(path_fwd, n) != canonical_form(path_mid, n)


def test_dedup_classes():
    cat = enumerate_nash(EnumerationConfig(n=3, alpha=F(2), dedup=True))
    assert len(cat.entries) == 3  # ownership patterns of the star up to relabeling
    assert cat.provenance.endswith("+dedup")
    full = enumerate_nash(EnumerationConfig(n=3, alpha=F(2)))
    assert isomorphism_dedup(full).entries == cat.entries
    cfg = GameConfig(3, F(2))
    for s in cat.entries:
        assert is_nash(cfg, s, Exact()).is_ne  # dedup preserves verdicts


def test_catalog_roundtrip(tmp_path):
    cat = enumerate_nash(EnumerationConfig(n=4, alpha=F(3, 2)))
    save_catalog(cat, tmp_path / "cat")
    loaded = load_catalog(tmp_path / "cat")
    assert loaded.entries == cat.entries
    assert loaded.provenance == cat.provenance
    assert loaded.config == cat.config
    index = json.loads((tmp_path / "cat" / "index.json").read_text())
    assert index["schema"] == 1
    assert index["counts"]["ne"] == len(cat.entries)
    assert all(e["social_cost"].count("/") == 1 for e in index["entries"])


def test_catalog_load_reverifies(tmp_path):
    cat = enumerate_nash(EnumerationConfig(n=3, alpha=F(2)))
    save_catalog(cat, tmp_path / "cat")
    # corrupt one entry into a non-equilibrium (triangle at alpha=2)
    bad = "ncg 1\nn=3 alpha=2/1\nbuy 0 1\nbuy 1 2\nbuy 2 0\n"
    (tmp_path / "cat" / "ne_000000.ncg").write_text(bad)
    with pytest.raises(ValidationError, match="re-verification"):
        load_catalog(tmp_path / "cat")
    assert load_catalog(tmp_path / "cat", verify=False)


def test_catalog_identical_across_threads(tmp_path):
    for t in (1, 4):
        d = tmp_path / f"t{t}"
        save_catalog(enumerate_nash(EnumerationConfig(n=4, alpha=F(5)), threads=t), d)
    files1 = sorted((tmp_path / "t1").iterdir())
    files4 = sorted((tmp_path / "t4").iterdir())
    assert [f.name for f in files1] == [f.name for f in files4]
    for f1, f4 in zip(files1, files4):
        assert f1.read_bytes() == f4.read_bytes()
