"""Shortest-path dependency machinery over a biconnected component.

For a root u and a choice J of >= 2 owned in-component edges per heavy owner v,
the dependency set of v is v plus every node whose *every* shortest path to u
descends through one of v's covered edges.  Dependency sets nest or are
disjoint, which yields a forest ordered by inclusion; peeling children off a
set leaves its private part (the AA set), whose in-component size is the
node's weight in the average-degree argument.

All computations run on the shortest-path DAG from the root over the whole
graph (hanging trees included); weights restrict to the component at the end.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .game_core import GameError, OwnedGraph, UNREACHABLE, ValidationError
from .structure import Component
from .verdicts import CheckResult, holds, precondition_not_met, violated


class InvariantViolation(GameError):
    """A structural fact the rest of the pipeline relies on failed; aborts loudly."""

    def __init__(self, message: str, witness: dict):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class GuardError(GameError):
    """Refusal: input exceeds a configured feasibility guard."""


@dataclass(frozen=True, eq=False)
class TwoEdgeCovering:
    """For every node owning >= 2 in-component edges, a chosen subset of >= 2 of them."""

    entries: dict[int, tuple[tuple[int, int], ...]]
    policy: str  # lex2 | all | explicit

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.entries)

    def edges(self, v: int) -> tuple[tuple[int, int], ...]:
        if v not in self.entries:
            raise ValidationError(f"{v} is not in the covering domain")
        return self.entries[v]


def make_covering(h: Component, policy: str = "lex2", explicit: dict | None = None) -> TwoEdgeCovering:
    """lex2 = two owned edges with smallest targets; all = every owned in-H edge."""
    domain = h.v_ge2()
    if policy == "explicit":
        if explicit is None:
            raise ValidationError("explicit covering requires a map")
        entries = {}
        for v in sorted(domain):
            if v not in explicit:
                raise ValidationError(f"explicit covering missing node {v}")
            edges = tuple(sorted(tuple(e) for e in explicit[v]))
            if len(edges) < 2:
                raise ValidationError(f"covering for {v} must have >= 2 edges")
            for a, b in edges:
                if a != v or (a, b) not in h.edges:
                    raise ValidationError(f"covering edge {(a, b)} not owned by {v} inside the component")
            entries[v] = edges
        if set(explicit) - set(entries):
            raise ValidationError(f"explicit covering has extra nodes {sorted(set(explicit) - set(entries))}")
        return TwoEdgeCovering(entries=entries, policy="explicit")
    if policy not in ("lex2", "all"):
        raise ValidationError(f"unknown covering policy {policy!r}")
    entries = {}
    for v in sorted(domain):
        owned = sorted(e for e in h.edges if e[0] == v)
        entries[v] = tuple(owned[:2]) if policy == "lex2" else tuple(owned)
    return TwoEdgeCovering(entries=entries, policy=policy)


@dataclass(frozen=True, eq=False)
class ASet:
    """v plus the nodes reachable from the root only through v's covered edges."""

    root: int
    owner: int
    j_edges: tuple[tuple[int, int], ...]
    members: frozenset[int]
    per_edge: dict[tuple[int, int], frozenset[int]]


def _descend_reach(g: OwnedGraph, dist, start: int, skip_from_v: frozenset[int] | None, v: int) -> set[int]:
    """Nodes reachable from `start` along strictly descending edges; edges
    v->t with t in skip_from_v are pruned."""
    reach = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            dx = dist[x]
            for y in g.neighbors(x):
                if dist[y] != dx + 1 or y in reach:
                    continue
                if skip_from_v is not None and x == v and y in skip_from_v:
                    continue
                reach.add(y)
                nxt.append(y)
        frontier = nxt
    return reach


def dependency_set(g: OwnedGraph, root: int, v: int, j_edges) -> ASet:
    """The dependency set of v seen from `root`, with its per-edge split."""
    j_edges = tuple(sorted(tuple(e) for e in j_edges))
    if root == v:
        raise ValidationError("dependency set is undefined for the root itself")
    for a, b in j_edges:
        if a != v:
            raise ValidationError(f"edge {(a, b)} not owned by {v}")
        if (a, b) not in g.owned_edges:
            raise ValidationError(f"edge {(a, b)} not in the graph")
    if not j_edges:
        raise ValidationError("need at least one covered edge")
    dist = [int(d) for d in g.dist[root]]
    if dist[v] == UNREACHABLE:
        raise ValidationError(f"{v} unreachable from root {root}")
    targets = frozenset(b for _, b in j_edges)
    reach = _descend_reach(g, dist, root, targets, v)
    comp = {x for x in range(g.n) if dist[x] != UNREACHABLE}
    members = frozenset(comp - reach) | {v}
    per_edge = {}
    for a, b in j_edges:
        if dist[b] == dist[v] + 1:
            desc = _descend_reach(g, dist, b, None, v)
            per_edge[(a, b)] = frozenset(desc & members)
        else:
            per_edge[(a, b)] = frozenset()
    return ASet(root=root, owner=v, j_edges=j_edges, members=members, per_edge=per_edge)


def a_set(g: OwnedGraph, h: Component, u: int, j: TwoEdgeCovering, v: int) -> ASet:
    if u not in h.vertices or v not in h.vertices:
        raise ValidationError("root and owner must lie in the component")
    return dependency_set(g, u, v, j.edges(v))


# -- dominance forest ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DominanceForest:
    """Forest on the covering domain ordered by strict dependency-set inclusion."""

    root_node: int  # the reference root u
    nodes: tuple[int, ...]
    a_sets: dict[int, ASet]
    parent: dict[int, int | None]
    children: dict[int, tuple[int, ...]]
    aa_sets: dict[int, frozenset[int]]
    aa_weight: dict[int, int]  # |AA in V(H)|
    h_vertices: frozenset[int]

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(v for v in self.nodes if self.parent[v] is None)

    def tree_nodes(self, root: int) -> tuple[int, ...]:
        out = []
        stack = [root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children[v]))
        return tuple(sorted(out))

    def chains(self, length: int) -> list[tuple[int, ...]]:
        """Forest paths w0 -> ... -> w_{length-1} whose interior nodes have
        exactly one child (2-paths of the forest)."""
        out = []

        def extend(chain: list[int]) -> None:
            if len(chain) == length:
                out.append(tuple(chain))
                return
            for c in self.children[chain[-1]]:
                extend(chain + [c])

        for w0 in self.nodes:
            extend([w0])
        return sorted(
            ch
            for ch in out
            if all(len(self.children[ch[i]]) == 1 for i in range(1, length - 1))
        )


def dominance_forest(g: OwnedGraph, h: Component, u: int, j: TwoEdgeCovering) -> DominanceForest:
    """Build all dependency sets for root u and the inclusion forest over them.

    Raises InvariantViolation if two dependency sets are neither disjoint nor
    nested, or if some node would get two parents; both would falsify facts the
    AA-weight bookkeeping depends on.
    """
    nodes = tuple(sorted(j.domain - {u}))
    a_sets = {v: a_set(g, h, u, j, v) for v in nodes}
    for v, w in itertools.combinations(nodes, 2):
        av, aw = a_sets[v].members, a_sets[w].members
        inter = av & aw
        if inter and not (av <= aw or aw <= av):
            raise InvariantViolation(
                "dependency sets neither disjoint nor nested",
                {"root": u, "v": v, "w": w, "a_v": sorted(av), "a_w": sorted(aw)},
            )
    dominates = {
        (v, w): a_sets[w].members < a_sets[v].members
        for v in nodes
        for w in nodes
        if v != w
    }
    # Edge (v, w) iff w's set is maximal among proper subsets of v's set: a node
    # strictly between in the inclusion order provably lies on every shortest
    # v-w path, and only this reading keeps every AA set free of heavy owners.
    parent: dict[int, int | None] = {}
    for w in nodes:
        doms = [v for v in nodes if v != w and dominates[(v, w)]]
        unblocked = []
        for v in doms:
            blocked = any(
                w2 not in (v, w) and dominates[(v, w2)] and dominates[(w2, w)]
                for w2 in nodes
            )
            if not blocked:
                unblocked.append(v)
        if len(unblocked) > 1:
            raise InvariantViolation(
                "node with two forest parents",
                {"root": u, "node": w, "parents": sorted(unblocked)},
            )
        parent[w] = unblocked[0] if unblocked else None
    children = {v: tuple(sorted(w for w in nodes if parent[w] == v)) for v in nodes}
    aa_sets = {}
    aa_weight = {}
    for v in nodes:
        covered = frozenset().union(*(a_sets[c].members for c in children[v]))
        aa_sets[v] = a_sets[v].members - covered
        aa_weight[v] = len(aa_sets[v] & h.vertices)
    return DominanceForest(
        root_node=u,
        nodes=nodes,
        a_sets=a_sets,
        parent=parent,
        children=children,
        aa_sets=aa_sets,
        aa_weight=aa_weight,
        h_vertices=h.vertices,
    )


# -- bridges and the bridge-clique analysis graph -------------------------------


def bridge_edges(g: OwnedGraph, xs, ys, exclude: int | None = None) -> list[tuple[int, int]]:
    """Undirected edges with one endpoint in xs (not `exclude`) and the other in ys."""
    xs = set(xs)
    ys = set(ys)
    out = []
    for x in sorted(xs):
        if x == exclude:
            continue
        for y in g.neighbors(x):
            if y in ys:
                out.append((x, y))
    return sorted(out)


@dataclass(frozen=True)
class BridgeCliqueReport:
    k: int
    edges: frozenset[tuple[int, int]]  # pairs (i, j), i < j, of covered-edge indices
    max_clique: int
    max_independent_set: int


def bridge_clique_graph(
    g: OwnedGraph, h: Component, root: int, v: int, j: TwoEdgeCovering, clique_guard: int = 20
) -> BridgeCliqueReport:
    """Analysis graph on v's covered edges: i ~ j iff their dependency subsets
    are joined by at least one edge.  Exact clique/independent-set sizes."""
    if j.policy != "all":
        raise ValidationError("bridge-clique analysis requires the all-owned-edges covering")
    aset = a_set(g, h, root, j, v)
    subs = [aset.per_edge[e] for e in aset.j_edges]
    k = len(subs)
    if k > clique_guard:
        raise GuardError(f"k={k} exceeds the exact clique search guard ({clique_guard})")
    edges = set()
    for i in range(k):
        for jdx in range(i + 1, k):
            if subs[i] and subs[jdx] and bridge_edges(g, subs[i], subs[jdx]):
                edges.add((i, jdx))
    adj = {i: set() for i in range(k)}
    for i, jdx in edges:
        adj[i].add(jdx)
        adj[jdx].add(i)
    verts = set(range(k))
    return BridgeCliqueReport(
        k=k,
        edges=frozenset(edges),
        max_clique=_max_clique(adj, verts),
        max_independent_set=_max_indep(adj, verts),
    )


def _max_clique(adj: dict[int, set[int]], verts: set[int]) -> int:
    best = 0

    def go(cand: list[int], cur: int) -> None:
        nonlocal best
        best = max(best, cur)
        while cand:
            if cur + len(cand) <= best:
                return
            x = cand.pop(0)
            go([y for y in cand if y in adj[x]], cur + 1)

    go(sorted(verts), 0)
    return best


def _max_indep(adj: dict[int, set[int]], verts: set[int]) -> int:
    best = 0

    def go(cand: list[int], cur: int) -> None:
        nonlocal best
        best = max(best, cur)
        if not cand or cur + len(cand) <= best:
            return
        x = cand[0]
        go([y for y in cand[1:] if y not in adj[x]], cur + 1)
        go(cand[1:], cur)

    go(sorted(verts), 0)
    return best


# -- lemma checkers --------------------------------------------------------------


def induced_component(g: OwnedGraph, zone, start: int) -> frozenset[int]:
    zone = set(zone)
    if start not in zone:
        raise ValidationError(f"{start} not in zone")
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if y in zone and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def zone_is_connected(g: OwnedGraph, zone) -> bool:
    zone = set(zone)
    if not zone:
        return True
    return len(induced_component(g, zone, min(zone))) == len(zone)


NESTING_CLAIM = "dependency sets of two owners are disjoint or nested"
INCLUSION_CLAIM = "a dependency set rooted inside a per-edge subset stays inside it"
CONNECTIVITY_CLAIM = "child-direction component minus the child's set stays connected"
EXCHANGE_CLAIM = "swap-resistant chain: local zone at least as large as the grandchild set"


def check_nesting(g: OwnedGraph, h: Component, u: int, j: TwoEdgeCovering) -> CheckResult:
    nodes = sorted(j.domain - {u})
    a_sets = {v: a_set(g, h, u, j, v) for v in nodes}
    return evaluate_nesting({v: a_sets[v].members for v in nodes}, root=u)


def evaluate_nesting(members: dict[int, frozenset[int]], root: int) -> CheckResult:
    for v, w in itertools.combinations(sorted(members), 2):
        av, aw = members[v], members[w]
        if av & aw and not (av <= aw or aw <= av):
            return violated(
                "nesting",
                NESTING_CLAIM,
                {"root": root, "v": v, "w": w, "a_v": sorted(av), "a_w": sorted(aw)},
            )
    return holds("nesting", NESTING_CLAIM, {"root": root, "pairs": len(members) * (len(members) - 1) // 2})


def evaluate_inclusion_site(root: int, v: int, edge, sub, inner: int, inner_members) -> CheckResult | None:
    """None when the site satisfies the claim; Violated with witness otherwise."""
    if frozenset(inner_members) <= frozenset(sub):
        return None
    return violated(
        "inclusion",
        INCLUSION_CLAIM,
        {
            "root": root,
            "v": v,
            "edge": list(edge),
            "inner": inner,
            "escapes": sorted(frozenset(inner_members) - frozenset(sub)),
        },
    )


def check_inclusion(g: OwnedGraph, h: Component, u: int, j: TwoEdgeCovering) -> CheckResult:
    nodes = sorted(j.domain - {u})
    a_sets = {v: a_set(g, h, u, j, v) for v in nodes}
    checked = 0
    for v in nodes:
        for e, sub in a_sets[v].per_edge.items():
            for v2 in sorted(sub):
                if v2 == v or v2 not in a_sets:
                    continue
                checked += 1
                bad = evaluate_inclusion_site(u, v, e, sub, v2, a_sets[v2].members)
                if bad is not None:
                    return bad
    return holds("inclusion", INCLUSION_CLAIM, {"root": u, "sites": checked})


def evaluate_connectivity_site(g: OwnedGraph, root: int, chain, s) -> CheckResult | None:
    """None when the residual set is connected; Violated with witness otherwise."""
    if zone_is_connected(g, s):
        return None
    return violated(
        "connectivity",
        CONNECTIVITY_CLAIM,
        {"root": root, "chain": list(chain), "set": sorted(s)},
    )


def check_connectivity(
    g: OwnedGraph, h: Component, u: int, j: TwoEdgeCovering, forest: DominanceForest | None = None
) -> CheckResult:
    forest = forest or dominance_forest(g, h, u, j)
    sites = 0
    for w0, w1, w2 in forest.chains(3):
        a1 = forest.a_sets[w1].members
        a2 = forest.a_sets[w2].members
        zone = induced_component(g, a1 - {w1}, w2)
        sites += 1
        bad = evaluate_connectivity_site(g, u, (w0, w1, w2), (zone | {w1}) - a2)
        if bad is not None:
            return bad
    return holds("connectivity", CONNECTIVITY_CLAIM, {"root": u, "sites": sites})


def check_exchange_count(
    g: OwnedGraph,
    h: Component,
    u: int,
    j: TwoEdgeCovering,
    alpha: Fraction,
    n: int,
    k_param: Fraction,
    ne_verified: bool,
    forest: DominanceForest | None = None,
    nonstandard: bool = False,
) -> CheckResult:
    """Swap-exchange inequality along forest chains v0->v1->v2->v3, gated on its
    full precondition set; expected PreconditionNotMet at desk scale."""
    pre = {"ne_verified": ne_verified, "alpha_gt_n": bool(alpha > n)}
    if not ne_verified or alpha <= n:
        return precondition_not_met("exchange_count", EXCHANGE_CLAIM, pre, nonstandard)
    forest = forest or dominance_forest(g, h, u, j)
    threshold = 1 + 4 * k_param * alpha / (alpha - n)
    pre["distance_threshold"] = f"{threshold.numerator}/{threshold.denominator}"
    applicable = 0
    for v0, v1, v2, v3 in forest.chains(4):
        if Fraction(g.d(u, v1)) < threshold:
            continue
        if Fraction(forest.aa_weight[v1]) >= k_param:
            continue
        zones = {}
        bridge_free = True
        for vi, vnext in ((v1, v2), (v2, v3)):
            ai = forest.a_sets[vi].members
            zone = induced_component(g, ai - {vi}, vnext)
            zones[vi] = zone
            inner = (zone | {vi}) - forest.a_sets[vnext].members
            outer = set(range(g.n)) - (zone | {vi})
            if bridge_edges(g, inner, outer, exclude=vi):
                bridge_free = False
                break
        if not bridge_free:
            continue
        applicable += 1
        lhs = len((zones[v1] | {v1}) - forest.a_sets[v3].members)
        rhs = len(forest.a_sets[v3].members)
        if lhs < rhs:
            return violated(
                "exchange_count",
                EXCHANGE_CLAIM,
                {"root": u, "chain": [v0, v1, v2, v3], "lhs": lhs, "rhs": rhs},
                pre,
                nonstandard,
            )
    if applicable == 0:
        pre["applicable_chains"] = 0
        return precondition_not_met("exchange_count", EXCHANGE_CLAIM, pre, nonstandard)
    pre["applicable_chains"] = applicable
    return holds("exchange_count", EXCHANGE_CLAIM, pre, nonstandard)


def lemma_checkers(
    g: OwnedGraph,
    h: Component,
    u: int,
    j: TwoEdgeCovering,
    alpha: Fraction | None = None,
    n: int | None = None,
    k_param: Fraction = Fraction(1),
    ne_verified: bool = False,
) -> list[CheckResult]:
    """Nesting, inclusion, connectivity (any graph) and the gated exchange check."""
    results = [
        check_nesting(g, h, u, j),
        check_inclusion(g, h, u, j),
        check_connectivity(g, h, u, j),
    ]
    if alpha is not None and n is not None:
        results.append(
            check_exchange_count(g, h, u, j, alpha=alpha, n=n, k_param=k_param, ne_verified=ne_verified)
        )
    return results


# -- AA-weight averages and tree anatomy -----------------------------------------


@dataclass(frozen=True, eq=False)
class TreeAnatomy:
    """Leaves / interior nodes / maximal 2-paths of one forest tree, plus the
    block partition of far-from-root 2-nodes into runs of l (and a remainder)."""

    root: int
    nodes: tuple[int, ...]
    average_aa_weight: Fraction
    leaves: frozenset[int]
    interior: frozenset[int]
    two_node_paths: tuple[tuple[int, ...], ...]
    blocks_full: tuple[tuple[int, ...], ...]
    blocks_rem: tuple[tuple[int, ...], ...]
    near_nodes: frozenset[int]  # tree nodes at distance <= L from the root u in G


def tree_anatomy(
    g: OwnedGraph, forest: DominanceForest, tree_root: int, big_l: int = 0, block_l: int = 1
) -> TreeAnatomy:
    if forest.parent.get(tree_root, "missing") is not None:
        raise ValidationError(f"{tree_root} is not a tree root of the forest")
    if block_l < 1:
        raise ValidationError("block length must be >= 1")
    nodes = forest.tree_nodes(tree_root)
    children = forest.children
    deg = {v: len(children[v]) + (0 if v == tree_root else 1) for v in nodes}
    leaves = frozenset(v for v in nodes if not children[v])
    interior = frozenset(v for v in nodes if v == tree_root or deg[v] > 2)
    paths = []
    for top in sorted(interior):
        for c in children[top]:
            chain = [top, c]
            while chain[-1] not in interior and chain[-1] not in leaves:
                chain.append(children[chain[-1]][0])
            paths.append(tuple(chain))
    u = forest.root_node
    far = {v for v in nodes if g.d(u, v) > big_l}
    blocks_full = []
    blocks_rem = []
    for path in paths:
        two_nodes = list(path[1:-1])
        run: list[int] = []
        for z in two_nodes + [None]:
            if z is not None and z in far:
                run.append(z)
                continue
            while len(run) >= block_l:
                blocks_full.append(tuple(run[:block_l]))
                run = run[block_l:]
            if run:
                blocks_rem.append(tuple(run))
            run = []
    total = sum(forest.aa_weight[v] for v in nodes)
    return TreeAnatomy(
        root=tree_root,
        nodes=nodes,
        average_aa_weight=Fraction(total, len(nodes)),
        leaves=leaves,
        interior=interior,
        two_node_paths=tuple(sorted(paths)),
        blocks_full=tuple(blocks_full),
        blocks_rem=tuple(blocks_rem),
        near_nodes=frozenset(v for v in nodes if g.d(u, v) <= big_l),
    )


def average_aa_weight(g: OwnedGraph, forest: DominanceForest, tree_root: int) -> Fraction:
    return tree_anatomy(g, forest, tree_root).average_aa_weight
