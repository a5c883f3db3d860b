"""Strategy-space exploration: exhaustive NE enumeration, exact optimum and
price of anarchy, best-response dynamics, isomorphism deduplication, and the
tree-conjecture sweep.

Exhaustive scans run on the integer kernels (numba or numpy, env-selected);
every equilibrium the kernel reports is re-verified by the exact Fraction
path, so a kernel defect cannot silently corrupt a catalog.
"""
from __future__ import annotations

import functools
import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import kernels
from .asets import GuardError
from .game_core import (
    Cost,
    GameConfig,
    StrategyVector,
    ValidationError,
    build_graph,
    cost,
    fmt_cost,
    from_ncg_text,
    to_ncg_text,
)
from .equilibrium import Exact, best_response_exact, is_nash
from .structure import biconnected_components, is_tree

DEFAULT_BUDGET = 1 << 30  # admits full enumeration up to n = 6
CHUNK = 1 << 17
SCHEMA = 1


@dataclass(frozen=True)
class EnumerationConfig:
    n: int
    alpha: Fraction
    mode: str = "exhaustive"  # exhaustive | brd
    dedup: bool = False
    seed: int = 0
    starts: int = 32
    max_steps: int = 200
    budget: int = DEFAULT_BUDGET

    def game(self) -> GameConfig:
        return GameConfig(self.n, self.alpha)


@dataclass(frozen=True, eq=False)
class NashCatalog:
    config: EnumerationConfig
    entries: tuple[StrategyVector, ...]  # sorted by canonical text
    provenance: str
    scanned: int

    def social_costs(self) -> list[Cost]:
        cfg = self.config.game()
        return [cost(cfg, build_graph(cfg, s)).social for s in self.entries]


def _check_budget(n: int, budget: int) -> int:
    total = (1 << (n - 1)) ** n
    if total > budget:
        raise GuardError(
            f"exhaustive enumeration at n={n} scans {total} vectors; "
            f"requires budget >= {total}, configured {budget}"
        )
    if n > kernels.MAX_TABLE_N:
        raise GuardError(f"kernel tables support n <= {kernels.MAX_TABLE_N}, got n={n}")
    return total


def _scaled_price(alpha: Fraction) -> tuple[int, int]:
    p, q = alpha.numerator, alpha.denominator
    if p >= 1 << 30 or q >= 1 << 30:
        raise GuardError("alpha numerator/denominator too large for the integer kernels")
    return p, q


@functools.lru_cache(maxsize=4)
def _usage_table(n: int):
    return kernels.usage_sum_table(n)


def _sort_entries(cfg: GameConfig, found: list[StrategyVector]) -> tuple[StrategyVector, ...]:
    return tuple(sorted(found, key=lambda s: to_ncg_text(cfg, s)))


def enumerate_nash(config: EnumerationConfig, threads: int = 1) -> NashCatalog:
    """Catalog of Nash equilibria; exhaustive scan or seeded dynamics fixed points."""
    cfg = config.game()
    if config.mode == "exhaustive":
        entries, scanned = _enumerate_exhaustive(cfg, config.budget, threads)
        provenance = "exhaustive"
    elif config.mode == "brd":
        entries, scanned = _enumerate_brd(cfg, config)
        provenance = "brd"
    else:
        raise ValidationError(f"unknown enumeration mode {config.mode!r}")
    catalog = NashCatalog(
        config=config,
        entries=_sort_entries(cfg, entries),
        provenance=provenance,
        scanned=scanned,
    )
    if config.dedup:
        catalog = isomorphism_dedup(catalog)
    return catalog


def _enumerate_exhaustive(cfg: GameConfig, budget: int, threads: int) -> tuple[list[StrategyVector], int]:
    n = cfg.n
    if n == 1:
        return [StrategyVector.from_lists([[]])], 1
    total = _check_budget(n, budget)
    p, q = _scaled_price(cfg.alpha)
    usage = _usage_table(n)
    br = kernels.best_response_table(usage, n, p, q)
    expand = kernels.expand_tables(n)
    pc = kernels.popcount_table(1 << (n - 1))
    ranges = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]

    def scan(rng: tuple[int, int]):
        return kernels.scan_chunk(rng[0], rng[1], n, p, q, usage, br, expand, pc)

    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(scan, ranges))
    else:
        parts = [scan(r) for r in ranges]
    ids = [int(v) for part in parts for v in part]
    found = [StrategyVector(tuple(kernels.decode_vector(v, n))) for v in ids]
    _cross_verify(cfg, found)
    return found, total


def _cross_verify(cfg: GameConfig, found: list[StrategyVector], cap: int = 5000) -> None:
    """Exact-path re-verification of kernel-reported equilibria (all, or a
    seeded sample when the catalog is very large)."""
    sample = found
    if len(found) > cap:
        rng = random.Random(f"cross:{cfg.n}:{cfg.alpha}")
        sample = rng.sample(found, cap)
    for s in sample:
        if not is_nash(cfg, s, Exact()).is_ne:
            raise RuntimeError(
                f"kernel/exact disagreement: vector {s.owned_edges()} reported NE "
                "by the scan but refuted by the exact path"
            )


def _random_strategy(n: int, rng: random.Random) -> StrategyVector:
    buys = []
    for u in range(n):
        buys.append([v for v in range(n) if v != u and rng.randrange(2)])
    return StrategyVector.from_lists(buys)


def _enumerate_brd(cfg: GameConfig, config: EnumerationConfig) -> tuple[list[StrategyVector], int]:
    found: dict[tuple, StrategyVector] = {}
    scanned = 0
    for i in range(config.starts):
        rng = random.Random(f"brd:{config.seed}:{i}")
        s = _random_strategy(cfg.n, rng)
        for _ in range(config.max_steps):
            changed = False
            for u in range(cfg.n):
                br, delta = best_response_exact(cfg, s, u)
                scanned += 1
                if delta < 0:
                    s = s.replace(u, br)
                    changed = True
            if not changed:
                break
        else:
            continue  # no fixed point within max_steps
        if is_nash(cfg, s, Exact()).is_ne:
            found[tuple(sorted(s.owned_edges()))] = s
    return list(found.values()), scanned


# -- exact optimum and price of anarchy ---------------------------------------------


@functools.lru_cache(maxsize=64)
def optimum_social_cost(n: int, alpha: Fraction, budget: int = DEFAULT_BUDGET) -> tuple[Fraction, StrategyVector]:
    """Exact minimum social cost over all strategy vectors, with a witness.

    A duplicate purchase only adds cost, so the optimum is the best undirected
    graph; the witness buys each edge at its smaller endpoint.  The known star
    and clique closed forms are asserted as a consistency check.
    """
    alpha = Fraction(alpha)
    if n == 1:
        return Fraction(0), StrategyVector.from_lists([[]])
    _check_budget(n, budget)
    usage = _usage_table(n)
    pcount = kernels.popcount_table(usage.shape[0])
    best: Fraction | None = None
    best_mask = -1
    u_inf = kernels.U_INF
    for mask in range(usage.shape[0]):
        row = usage[mask]
        if row.max() >= u_inf:
            continue
        social = alpha * int(pcount[mask]) + int(row.sum())
        if best is None or social < best:
            best, best_mask = social, mask
    assert best is not None
    pu, pv = kernels.pair_endpoints(n)
    buys: list[list[int]] = [[] for _ in range(n)]
    for b in range(len(pu)):
        if best_mask >> b & 1:
            buys[int(pu[b])].append(int(pv[b]))
    witness = StrategyVector.from_lists(buys)
    star = alpha * (n - 1) + 2 * (n - 1) * (n - 1)
    clique = alpha * n * (n - 1) / 2 + n * (n - 1)
    if alpha >= 2 and best != star:
        raise RuntimeError(f"optimum {best} disagrees with the star closed form {star}")
    if alpha <= 2 and best != clique:
        raise RuntimeError(f"optimum {best} disagrees with the clique closed form {clique}")
    return best, witness


@dataclass(frozen=True, eq=False)
class PoAEstimate:
    n: int
    alpha: Fraction
    opt_cost: Fraction
    opt_witness: StrategyVector
    worst_cost: Fraction
    worst_witness: StrategyVector
    poa: Fraction
    exact: bool
    reference_bounds: tuple[tuple[str, str, bool], ...]  # (range description, bound, satisfied)


def applicable_poa_bounds(n: int, alpha: Fraction, poa: Fraction) -> tuple[tuple[str, str, bool], ...]:
    out = []
    if 0 < alpha < 1:
        out.append(("alpha in (0,1)", "1", poa <= 1))
    if 1 < alpha < 2:
        out.append(("alpha in (1,2)", "4/3", poa <= Fraction(4, 3)))
    if alpha > 4 * n - 13:
        out.append(("alpha > 4n-13 (all NE are trees)", "<5", poa < 5))
    return tuple(out)


def poa_exact(n: int, alpha: Fraction, threads: int = 1, budget: int = DEFAULT_BUDGET) -> PoAEstimate:
    """Exact price of anarchy by exhaustive enumeration plus exact optimum."""
    alpha = Fraction(alpha)
    catalog = enumerate_nash(EnumerationConfig(n=n, alpha=alpha, budget=budget), threads=threads)
    if not catalog.entries:
        raise RuntimeError(f"no NE found at n={n}, alpha={alpha}; cannot define PoA")
    opt, opt_witness = optimum_social_cost(n, alpha, budget=budget)
    cfg = catalog.config.game()
    worst_cost: Fraction | None = None
    worst = None
    for s in catalog.entries:
        c = cost(cfg, build_graph(cfg, s)).social
        if worst_cost is None or c > worst_cost:
            worst_cost, worst = c, s
    # n = 1: both costs are 0 and the ratio degenerates to 1
    poa = worst_cost / opt if opt else Fraction(1)
    return PoAEstimate(
        n=n,
        alpha=alpha,
        opt_cost=opt,
        opt_witness=opt_witness,
        worst_cost=worst_cost,
        worst_witness=worst,
        poa=poa,
        exact=True,
        reference_bounds=applicable_poa_bounds(n, alpha, poa),
    )


# -- tree-conjecture sweep ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SweepPoint:
    n: int
    alpha: Fraction
    ne_count: int
    tree_count: int
    non_tree_witnesses: tuple[StrategyVector, ...]

    @property
    def conjecture_applies(self) -> bool:
        return self.alpha > self.n

    @property
    def falsifies(self) -> bool:
        return self.conjecture_applies and bool(self.non_tree_witnesses)


def tree_conjecture_sweep(
    points, threads: int = 1, budget: int = DEFAULT_BUDGET
) -> list[SweepPoint]:
    """For each (n, alpha): enumerate all NE and count trees; any non-tree NE
    with alpha > n is a falsification witness."""
    out = []
    for n, alpha in points:
        alpha = Fraction(alpha)
        catalog = enumerate_nash(EnumerationConfig(n=n, alpha=alpha, budget=budget), threads=threads)
        cfg = catalog.config.game()
        non_tree = tuple(s for s in catalog.entries if not is_tree(build_graph(cfg, s)))
        out.append(
            SweepPoint(
                n=n,
                alpha=alpha,
                ne_count=len(catalog.entries),
                tree_count=len(catalog.entries) - len(non_tree),
                non_tree_witnesses=non_tree,
            )
        )
    return out


# -- ownership-respecting isomorphism -------------------------------------------------

ISO_GUARD_N = 8


def canonical_form(s: StrategyVector, n: int) -> tuple[tuple[int, int], ...]:
    """Lexicographically least owned-edge list over all player relabelings."""
    edges = s.owned_edges()
    best: tuple[tuple[int, int], ...] | None = None
    for perm in itertools.permutations(range(n)):
        relabeled = tuple(sorted((perm[a], perm[b]) for a, b in edges))
        if best is None or relabeled < best:
            best = relabeled
    return best


def isomorphism_dedup(catalog: NashCatalog) -> NashCatalog:
    """Keep one representative per ownership-respecting isomorphism class."""
    n = catalog.config.n
    if n > ISO_GUARD_N:
        import logging

        logging.getLogger(__name__).warning(
            "isomorphism dedup skipped: n=%d exceeds the exact permutation guard %d", n, ISO_GUARD_N
        )
        return catalog
    cfg = catalog.config.game()
    classes: dict[tuple, StrategyVector] = {}
    for s in catalog.entries:
        key = canonical_form(s, n)
        cur = classes.get(key)
        if cur is None or to_ncg_text(cfg, s) < to_ncg_text(cfg, cur):
            classes[key] = s
    return NashCatalog(
        config=catalog.config,
        entries=_sort_entries(cfg, list(classes.values())),
        provenance=catalog.provenance + "+dedup",
        scanned=catalog.scanned,
    )


# -- persistence -----------------------------------------------------------------------


def _entry_digest(cfg: GameConfig, s: StrategyVector) -> dict:
    g = build_graph(cfg, s)
    rep = cost(cfg, g)
    comps = biconnected_components(g) if g.connected() else []
    return {
        "social_cost": fmt_cost(rep.social),
        "edges": len(g.undirected_edges()),
        "is_tree": is_tree(g),
        "components": len(comps),
        "max_component_diameter": max((h.diameter for h in comps), default=0),
    }


def save_catalog(catalog: NashCatalog, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    cfg = catalog.config.game()
    entries = []
    for i, s in enumerate(catalog.entries):
        name = f"ne_{i:06d}.ncg"
        (directory / name).write_bytes(to_ncg_text(cfg, s).encode("ascii"))
        entries.append({"file": name, **_entry_digest(cfg, s)})
    index = {
        "schema": SCHEMA,
        "config": {
            "n": catalog.config.n,
            "alpha": fmt_cost(catalog.config.alpha),
            "mode": catalog.config.mode,
            "dedup": catalog.config.dedup,
            "seed": catalog.config.seed,
            "budget": catalog.config.budget,
        },
        "provenance": catalog.provenance,
        "counts": {"ne": len(catalog.entries), "scanned": catalog.scanned},
        "entries": entries,
    }
    (directory / "index.json").write_text(
        json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="ascii"
    )


def load_catalog(directory, verify: bool = True) -> NashCatalog:
    """Load a catalog; every entry re-verifies as an exact NE unless verify=False."""
    directory = Path(directory)
    index = json.loads((directory / "index.json").read_text(encoding="ascii"))
    if index.get("schema") != SCHEMA:
        raise ValidationError(f"unsupported catalog schema {index.get('schema')!r}")
    icfg = index["config"]
    config = EnumerationConfig(
        n=icfg["n"],
        alpha=Fraction(icfg["alpha"]),
        mode=icfg["mode"],
        dedup=icfg["dedup"],
        seed=icfg["seed"],
        budget=icfg["budget"],
    )
    cfg = config.game()
    entries = []
    for ent in index["entries"]:
        fcfg, s = from_ncg_text((directory / ent["file"]).read_bytes().decode("ascii"))
        if fcfg != cfg:
            raise ValidationError(f"catalog entry {ent['file']} disagrees with the index config")
        if verify and not is_nash(cfg, s, Exact()).is_ne:
            raise ValidationError(f"catalog entry {ent['file']} fails exact NE re-verification")
        entries.append(s)
    return NashCatalog(
        config=config,
        entries=tuple(entries),
        provenance=index["provenance"],
        scanned=index["counts"]["scanned"],
    )
