"""Deviations, exact and restricted Nash verification, delete-k-buy bounds.

Exact verification scans every alternative purchase set of every player
(2^(n-1) subsets), so its verdict is sound and complete; restricted mode scans
only named deviation classes and is a sound refuter but a heuristic certifier.
All cost differences are recomputed from scratch in exact arithmetic.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .asets import GuardError, dependency_set, TwoEdgeCovering
from .game_core import (
    Cost,
    GameConfig,
    INF,
    Infinity,
    OwnedGraph,
    StrategyVector,
    UNREACHABLE,
    ValidationError,
    bfs_distances,
    build_graph,
    fmt_cost,
    player_cost,
    usage_cost,
)
from .structure import induced_distance
from .verdicts import CheckResult, holds, precondition_not_met, violated


@dataclass(frozen=True)
class Buy:
    player: int
    target: int


@dataclass(frozen=True)
class Delete:
    player: int
    target: int


@dataclass(frozen=True)
class Swap:
    player: int
    old_target: int
    new_target: int


@dataclass(frozen=True)
class MultiDeleteBuy:
    player: int
    deleted: frozenset[int]
    buy_target: int


@dataclass(frozen=True)
class Replace:
    """Wholesale purchase-set change; used as a witness when no single-class
    deviation expresses the improving move."""

    player: int
    targets: frozenset[int]


Deviation = Union[Buy, Delete, Swap, MultiDeleteBuy, Replace]


def deviation_str(d: Deviation) -> str:
    if isinstance(d, Buy):
        return f"buy {d.player} {d.target}"
    if isinstance(d, Delete):
        return f"delete {d.player} {d.target}"
    if isinstance(d, Swap):
        return f"swap {d.player} {d.old_target} {d.new_target}"
    if isinstance(d, MultiDeleteBuy):
        inner = ",".join(str(t) for t in sorted(d.deleted))
        return f"multidb {d.player} [{inner}] {d.buy_target}"
    if isinstance(d, Replace):
        inner = ",".join(str(t) for t in sorted(d.targets))
        return f"replace {d.player} [{inner}]"
    raise ValidationError(f"unknown deviation {d!r}")


def parse_deviation(text: str) -> Deviation:
    parts = text.strip().split()
    try:
        if parts[0] == "buy" and len(parts) == 3:
            return Buy(int(parts[1]), int(parts[2]))
        if parts[0] == "delete" and len(parts) == 3:
            return Delete(int(parts[1]), int(parts[2]))
        if parts[0] == "swap" and len(parts) == 4:
            return Swap(int(parts[1]), int(parts[2]), int(parts[3]))
        if parts[0] in ("multidb", "replace") and parts[2].startswith("[") :
            m = re.fullmatch(r"\[([0-9,]*)\]", parts[2])
            if m is None:
                raise ValueError(parts[2])
            items = frozenset(int(t) for t in m.group(1).split(",") if t)
            if parts[0] == "multidb" and len(parts) == 4:
                return MultiDeleteBuy(int(parts[1]), items, int(parts[3]))
            if parts[0] == "replace" and len(parts) == 3:
                return Replace(int(parts[1]), items)
    except (ValueError, IndexError):
        pass
    raise ValidationError(f"cannot parse deviation {text!r}")


def validate_deviation(s: StrategyVector, d: Deviation, n: int) -> None:
    def chk(cond: bool, msg: str) -> None:
        if not cond:
            raise ValidationError(msg)

    chk(0 <= d.player < n, f"player {d.player} out of range")
    own = s.buys[d.player]
    if isinstance(d, Buy):
        chk(0 <= d.target < n and d.target != d.player, f"bad buy target {d.target}")
        chk(d.target not in own, f"player {d.player} already buys {d.target}")
    elif isinstance(d, Delete):
        chk(d.target in own, f"player {d.player} does not own an edge to {d.target}")
    elif isinstance(d, Swap):
        chk(d.old_target in own, f"player {d.player} does not own an edge to {d.old_target}")
        chk(
            0 <= d.new_target < n and d.new_target != d.player,
            f"bad swap target {d.new_target}",
        )
        chk(d.new_target not in own, f"player {d.player} already buys {d.new_target}")
        chk(d.new_target != d.old_target, "swap must change the target")
    elif isinstance(d, MultiDeleteBuy):
        chk(len(d.deleted) >= 1, "must delete at least one edge")
        chk(d.deleted <= own, f"deleted edges {sorted(d.deleted - own)} not owned")
        chk(
            0 <= d.buy_target < n and d.buy_target != d.player,
            f"bad buy target {d.buy_target}",
        )
        chk(d.buy_target not in own - d.deleted, f"player {d.player} already buys {d.buy_target}")
    elif isinstance(d, Replace):
        for t in d.targets:
            chk(0 <= t < n and t != d.player, f"bad replace target {t}")
    else:
        raise ValidationError(f"unknown deviation {d!r}")


def apply_to_strategy(s: StrategyVector, d: Deviation) -> StrategyVector:
    own = set(s.buys[d.player])
    if isinstance(d, Buy):
        own.add(d.target)
    elif isinstance(d, Delete):
        own.discard(d.target)
    elif isinstance(d, Swap):
        own.discard(d.old_target)
        own.add(d.new_target)
    elif isinstance(d, MultiDeleteBuy):
        own -= d.deleted
        own.add(d.buy_target)
    elif isinstance(d, Replace):
        own = set(d.targets)
    return s.replace(d.player, own)


@dataclass(frozen=True, eq=False)
class DeviationOutcome:
    delta_cost: Cost  # deviated minus original, for the deviating player
    deviated_graph: OwnedGraph


def apply_deviation(cfg: GameConfig, s: StrategyVector, d: Deviation) -> DeviationOutcome:
    """Full recomputation of the deviated graph and the player's exact cost change."""
    s.validate(cfg.n)
    validate_deviation(s, d, cfg.n)
    before = player_cost(cfg, build_graph(cfg, s), d.player)
    s2 = apply_to_strategy(s, d)
    g2 = build_graph(cfg, s2)
    after = player_cost(cfg, g2, d.player)
    return DeviationOutcome(delta_cost=after - before, deviated_graph=g2)


# -- best responses ------------------------------------------------------------


def _lex_less(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return a < b


def best_response_exact(
    cfg: GameConfig, s: StrategyVector, u: int, guard_n: int = 25
) -> tuple[frozenset[int], Cost]:
    """Scan all purchase sets for u; returns (best set, cost delta vs current).

    Ties go to the lexicographically smallest sorted target tuple.
    """
    s.validate(cfg.n)
    n = cfg.n
    if not 0 <= u < n:
        raise ValidationError(f"player {u} out of range")
    if n > guard_n:
        raise GuardError(
            f"best-response scan needs 2^(n-1) subsets; n={n} exceeds the guard n<={guard_n}"
        )
    rest_adj = [0] * n
    for x, targets in enumerate(s.buys):
        if x == u:
            continue
        for y in targets:
            rest_adj[x] |= 1 << y
            rest_adj[y] |= 1 << x
    oth = [v for v in range(n) if v != u]
    cur_cost = None
    best_cost: Cost | None = None
    best_set: tuple[int, ...] | None = None
    cur_key = tuple(sorted(s.buys[u]))
    for t in range(1 << (n - 1)):
        targets = tuple(oth[k] for k in range(n - 1) if t >> k & 1)
        adj = list(rest_adj)
        for y in targets:
            adj[u] |= 1 << y
            adj[y] |= 1 << u
        dist = bfs_distances(adj, n, u)
        if any(dv == UNREACHABLE for dv in dist):
            c: Cost = INF
        else:
            c = cfg.alpha * len(targets) + sum(dist)
        key = tuple(sorted(targets))
        if key == cur_key:
            cur_cost = c
        if best_cost is None or c < best_cost or (c == best_cost and _lex_less(key, best_set)):
            best_cost, best_set = c, key
    assert cur_cost is not None and best_cost is not None
    return frozenset(best_set), best_cost - cur_cost


# -- Nash verification ----------------------------------------------------------


@dataclass(frozen=True)
class Exact:
    guard_n: int = 25


DEVIATION_CLASSES = ("buy", "delete", "swap", "multidb")


@dataclass(frozen=True)
class Restricted:
    classes: tuple[str, ...] = DEVIATION_CLASSES
    k_cap: int = 3  # max size of a multi-delete


Mode = Union[Exact, Restricted]


@dataclass(frozen=True, eq=False)
class NashVerdict:
    is_ne: bool
    witness: Deviation | None
    mode: Mode


def class_deviations(
    s: StrategyVector, u: int, n: int, classes=DEVIATION_CLASSES, k_cap: int = 3
) -> Iterator[Deviation]:
    """Deterministic enumeration of the named deviation classes for player u."""
    own = sorted(s.buys[u])
    not_own = [v for v in range(n) if v != u and v not in s.buys[u]]
    if "buy" in classes:
        for w in not_own:
            yield Buy(u, w)
    if "delete" in classes:
        for w in own:
            yield Delete(u, w)
    if "swap" in classes:
        for a in own:
            for b in not_own:
                yield Swap(u, a, b)
    if "multidb" in classes:
        for k in range(1, min(k_cap, len(own)) + 1):
            for deleted in itertools.combinations(own, k):
                dset = frozenset(deleted)
                for w in range(n):
                    if w == u or w in (set(own) - dset):
                        continue
                    yield MultiDeleteBuy(u, dset, w)


def _best_improving(cfg: GameConfig, s: StrategyVector, devs) -> tuple[Deviation | None, Cost | None]:
    best: Deviation | None = None
    best_delta: Cost | None = None
    for d in devs:
        delta = apply_deviation(cfg, s, d).delta_cost
        if delta < 0 and (best_delta is None or delta < best_delta):
            best, best_delta = d, delta
    return best, best_delta


def is_nash(cfg: GameConfig, s: StrategyVector, mode: Mode = Exact()) -> NashVerdict:
    """Exact: NE iff no player's full best response improves (sound + complete).
    Restricted: scans only the named classes (sound refuter, heuristic certifier)."""
    s.validate(cfg.n)
    n = cfg.n
    if isinstance(mode, Exact):
        for u in range(n):
            br, delta = best_response_exact(cfg, s, u, guard_n=mode.guard_n)
            if delta < 0:
                witness, _ = _best_improving(cfg, s, class_deviations(s, u, n))
                if witness is None:
                    witness = Replace(u, br)
                return NashVerdict(is_ne=False, witness=witness, mode=mode)
        return NashVerdict(is_ne=True, witness=None, mode=mode)
    best: Deviation | None = None
    best_delta: Cost | None = None
    for u in range(n):
        d, delta = _best_improving(
            cfg, s, class_deviations(s, u, n, classes=mode.classes, k_cap=mode.k_cap)
        )
        if d is not None and (best_delta is None or delta < best_delta):
            best, best_delta = d, delta
    return NashVerdict(is_ne=best is None, witness=best, mode=mode)


# -- the delete-k-buy cost-difference bound --------------------------------------


@dataclass(frozen=True, eq=False)
class DeleteKBuyReport:
    """Exact cost change of deleting all covered edges and buying one link,
    next to the rerouting upper bound and which case produced it."""

    delta: Cost
    bound: Cost
    case: str  # "i" (linked reroute) | "ii" (disjoint reroute) | "inapplicable"
    res: Cost | None
    a_size: int
    detail: dict


def delete_k_buy_bound(
    cfg: GameConfig, g: OwnedGraph, v: int, j_edges, w: int
) -> DeleteKBuyReport:
    """Exact delta of the delete-all-of-J(v)-and-buy-to-w deviation, plus the
    case-split rerouting bound.  Cases: (i) some covered subset is bridged to
    the outside and the others link to it inside the set; (ii) the covered
    subsets are pairwise disjoint.  Anything else is inapplicable."""
    j_edges = tuple(sorted(tuple(e) for e in j_edges))
    if len(j_edges) < 2:
        raise ValidationError("the deviation deletes at least two covered edges")
    for a, b in j_edges:
        if a != v:
            raise ValidationError(f"edge {(a, b)} not owned by {v}")
        if (a, b) not in g.owned_edges:
            raise ValidationError(f"edge {(a, b)} not in the graph")
    if w == v:
        raise ValidationError("buy target must differ from the deviating player")
    s = g.strategy()
    deleted = frozenset(b for _, b in j_edges)
    dev = MultiDeleteBuy(v, deleted, w)
    outcome = apply_deviation(cfg, s, dev)

    aset = dependency_set(g, w, v, j_edges)
    k = len(j_edges)
    subs = [aset.per_edge[e] for e in aset.j_edges]
    nonempty = [i for i, sub in enumerate(subs) if sub]
    d_w = usage_cost(g, w)
    d_v = usage_cost(g, v)
    detail: dict = {"nonempty": [list(aset.j_edges[i]) for i in nonempty]}
    j_und = {(min(a, b), max(a, b)) for a, b in j_edges}

    def bridge_candidates(sub: frozenset[int], complement: set[int]) -> list[tuple[int, int, int]]:
        """(d_G(v, x), x, y) for usable bridge edges from sub to complement."""
        out = []
        for x in sorted(sub):
            if x == v:
                continue
            for y in g.neighbors(x):
                if y in complement and (min(x, y), max(x, y)) not in j_und:
                    out.append((g.d(v, x), x, y))
        return sorted(out)

    disjoint = all(
        not (subs[i] & subs[jdx]) for i in nonempty for jdx in nonempty if i < jdx
    )
    case = "inapplicable"
    res: Cost | None = None
    if disjoint:
        worst = Fraction(0)
        feasible = True
        picks = []
        for i in nonempty:
            cands = bridge_candidates(subs[i], set(range(g.n)) - subs[i])
            if not cands:
                feasible = False
                break
            dx, x, y = cands[0]
            picks.append((list(aset.j_edges[i]), x, y, dx))
            worst = max(worst, Fraction(dx))
        if feasible:
            case = "ii"
            res = max(Fraction(0), 2 * worst)
            detail["bridges"] = picks
    if case == "inapplicable":
        best_star: tuple[Cost, int, dict] | None = None
        outside = set(range(g.n)) - aset.members
        for i in nonempty:
            cands = bridge_candidates(subs[i], outside)
            if not cands:
                continue
            v_i = aset.j_edges[i][1]
            link = Fraction(0)
            feasible = True
            for jdx in nonempty:
                if jdx == i:
                    continue
                v_j = aset.j_edges[jdx][1]
                dd = induced_distance(g, subs[i] | subs[jdx], v_i, v_j)
                if dd == UNREACHABLE:
                    feasible = False
                    break
                link = max(link, Fraction(dd))
            if not feasible:
                continue
            dvx, x, y = cands[0]
            cand_res = 2 * Fraction(g.d(v_i, x)) + link
            if best_star is None or cand_res < best_star[0]:
                best_star = (cand_res, i, {"bridge": [x, y], "link_span": str(link)})
        if best_star is not None:
            case = "i"
            res, _, info = best_star
            detail.update(info)
    if case == "inapplicable" or isinstance(d_w, Infinity) or isinstance(d_v, Infinity):
        bound: Cost = INF
        res = None if case == "inapplicable" else res
    else:
        bound = -(k - 1) * cfg.alpha + cfg.n + d_w - d_v + res * len(aset.members)
    return DeleteKBuyReport(
        delta=outcome.delta_cost,
        bound=bound,
        case=case,
        res=res,
        a_size=len(aset.members),
        detail=detail,
    )


# -- the buy-a-link size bound ----------------------------------------------------

BUY_LINK_CLAIM = "dependency-set size is at most alpha over (distance - 1)"


def buy_link_lower_bound_check(
    cfg: GameConfig,
    g: OwnedGraph,
    v: int,
    w: int,
    j: TwoEdgeCovering,
    ne_verified: bool = True,
    nonstandard: bool = False,
) -> CheckResult:
    """In equilibrium, buying a link from w to v pays off for every captured
    node, so |A| <= alpha/(r-1) where r = d(w, v) > 1."""
    pre = {"ne_verified": ne_verified}
    if v not in j.domain:
        pre["in_domain"] = False
        return precondition_not_met("buy_link_bound", BUY_LINK_CLAIM, pre, nonstandard)
    r = g.d(v, w)
    pre["r"] = r
    if not ne_verified or r <= 1:
        return precondition_not_met("buy_link_bound", BUY_LINK_CLAIM, pre, nonstandard)
    aset = dependency_set(g, w, v, j.edges(v))
    size = len(aset.members)
    limit = cfg.alpha / (r - 1)
    if Fraction(size) <= limit:
        return holds(
            "buy_link_bound", BUY_LINK_CLAIM, {**pre, "size": size, "limit": fmt_cost(limit)}, nonstandard
        )
    return violated(
        "buy_link_bound",
        BUY_LINK_CLAIM,
        {"v": v, "w": w, "r": r, "size": size, "limit": fmt_cost(limit), "members": sorted(aset.members)},
        pre,
        nonstandard,
    )
