"""Topology of equilibrium graphs.

Biconnected components with hanging-tree weights, the contracted multigraph of
branch nodes (each maximal chain of degree-2 nodes becomes one weighted edge),
degree statistics in both direct and contracted form, maximal 2-paths, distance
layers, induced distances, and girth.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .game_core import (
    INF,
    UNREACHABLE,
    Cost,
    OwnedGraph,
    ValidationError,
    usage_cost,
)


@dataclass(frozen=True, eq=False)
class Component:
    """A maximal biconnected subgraph H with ownership and hanging-tree weights.

    `hanging_weight[v]` is the size of the tree hanging off H at v, v included.
    """

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]  # (owner, target) pairs, both endpoints in H
    diameter: int
    hanging_weight: dict[int, int]

    def __post_init__(self):
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def out_degree(self, v: int) -> int:
        return sum(1 for a, _ in self.edges if a == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, b in self.edges if b == v)

    def v_ge2(self) -> frozenset[int]:
        """Nodes owning at least two edges inside H."""
        return frozenset(v for v in self.vertices if self.out_degree(v) >= 2)

    def undirected_edges(self) -> list[tuple[int, int]]:
        return sorted({(min(a, b), max(a, b)) for a, b in self.edges})

    def distances_from(self, u: int) -> dict[int, int]:
        if u not in self.vertices:
            raise ValidationError(f"{u} not in component")
        dist = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for v in frontier:
                for w in self._adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist


def _bcc_edge_groups(n: int, edges: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Edge groups of the biconnected components (iterative lowpoint DFS)."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for lst in adj:
        lst.sort()
    disc = [-1] * n
    low = [0] * n
    comps: list[list[tuple[int, int]]] = []
    estack: list[tuple[int, int]] = []
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack: list[tuple[int, int, iter]] = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    estack.append((v, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(adj[w])))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if not descended:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] >= disc[pv]:
                        comp = []
                        while True:
                            e = estack.pop()
                            comp.append(e)
                            if e == (pv, v):
                                break
                        comps.append(comp)
    assert not estack
    return comps


def _hanging_weights(g: OwnedGraph, h_vertices: frozenset[int]) -> dict[int, int]:
    weights = {}
    outside = set(range(g.n)) - set(h_vertices)
    for v in sorted(h_vertices):
        allowed = outside | {v}
        seen = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for x in frontier:
                for y in g.neighbors(x):
                    if y in allowed and y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        weights[v] = len(seen)
    return weights


def _component_diameter(vertices: frozenset[int], und_edges: list[tuple[int, int]]) -> int:
    adj = {v: [] for v in vertices}
    for a, b in und_edges:
        adj[a].append(b)
        adj[b].append(a)
    diam = 0
    for src in vertices:
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        diam = max(diam, max(dist.values()))
    return diam


def biconnected_components(g: OwnedGraph) -> list[Component]:
    """Non-trivial (>= 3 vertices) biconnected components with hanging weights."""
    und = g.undirected_edges()
    owned = {}
    for a, b in g.owned_edges:
        owned.setdefault((min(a, b), max(a, b)), []).append((a, b))
    groups = _bcc_edge_groups(g.n, und)
    comps = []
    for group in groups:
        verts = frozenset(v for e in group for v in e)
        if len(verts) < 3:
            continue
        comp_owned = []
        for a, b in group:
            comp_owned.extend(owned[(min(a, b), max(a, b))])
        comps.append(
            Component(
                vertices=verts,
                edges=frozenset(comp_owned),
                diameter=_component_diameter(verts, [tuple(sorted(e)) for e in group]),
                hanging_weight=_hanging_weights(g, verts),
            )
        )
    comps.sort(key=lambda c: min(c.vertices))
    return comps


# -- 2-paths and the contracted multigraph -----------------------------------


@dataclass(frozen=True)
class TwoPath:
    """Maximal path whose interior nodes have undirected degree 2 in H."""

    vertices: tuple[int, ...]
    closed: bool
    edges: tuple[tuple[int, int], ...]  # with ownership, path order

    @property
    def interior_count(self) -> int:
        return len(self.vertices) if self.closed else max(0, len(self.vertices) - 2)

    def interior_ownership(self) -> list[str]:
        """Per interior node: which of its two path edges it bought."""
        owners = []
        verts = self.vertices
        interior = range(len(verts)) if self.closed else range(1, len(verts) - 1)
        owned = set(self.edges)
        for i in interior:
            fwd = (verts[i], verts[(i + 1) % len(verts)]) in owned
            prev = (verts[i], verts[i - 1]) in owned
            owners.append({(True, True): "both", (True, False): "forward", (False, True): "backward", (False, False): "none"}[(fwd, prev)])
        return owners


def two_paths(h: Component, include_plain: bool = False) -> list[TwoPath]:
    """Maximal 2-paths of H (>= 1 interior 2-node); a pure cycle is one path
    flagged `closed`.  include_plain adds the direct branch-to-branch edges,
    which the contraction needs as weight-0 multi-edges."""
    owned = set(h.edges)

    def orient(a: int, b: int) -> tuple[int, int]:
        return (a, b) if (a, b) in owned else (b, a)

    endpoints = sorted(v for v in h.vertices if h.degree(v) != 2)
    used: set[tuple[int, int]] = set()
    paths = []
    for b in endpoints:
        for nb in h.neighbors(b):
            key = (min(b, nb), max(b, nb))
            if key in used:
                continue
            used.add(key)
            verts = [b, nb]
            while h.degree(verts[-1]) == 2 and verts[-1] not in endpoints:
                nxts = [w for w in h.neighbors(verts[-1]) if w != verts[-2]]
                step = nxts[0]
                used.add((min(verts[-1], step), max(verts[-1], step)))
                verts.append(step)
            edges = tuple(orient(verts[i], verts[i + 1]) for i in range(len(verts) - 1))
            paths.append(TwoPath(vertices=tuple(verts), closed=False, edges=edges))
    if not endpoints and h.vertices:
        # H is a disjoint union of cycles; biconnected H means exactly one.
        remaining = set(h.vertices)
        while remaining:
            start = min(remaining)
            verts = [start]
            prev = None
            cur = start
            while True:
                nxts = sorted(w for w in h.neighbors(cur) if w != prev)
                prev, cur = cur, nxts[0]
                if cur == start:
                    break
                verts.append(cur)
            remaining -= set(verts)
            edges = tuple(orient(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts)))
            paths.append(TwoPath(vertices=tuple(verts), closed=True, edges=edges))
    if not include_plain:
        paths = [p for p in paths if p.closed or p.interior_count >= 1]
    paths.sort(key=lambda p: p.vertices)
    return paths


@dataclass(frozen=True)
class H3Multigraph:
    """Contraction of H: branch nodes (degree >= 3), one weighted multi-edge per
    maximal 2-path, weight = number of interior 2-nodes."""

    vertices: frozenset[int]
    edges: tuple[tuple[int, int, int], ...]  # (endpoint, endpoint, weight), sorted

    @property
    def empty(self) -> bool:
        return not self.vertices

    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)


def build_h3(h: Component) -> H3Multigraph:
    branch = frozenset(v for v in h.vertices if h.degree(v) >= 3)
    if not branch:
        return H3Multigraph(vertices=frozenset(), edges=())
    edges = []
    for p in two_paths(h, include_plain=True):
        a, b = p.vertices[0], p.vertices[-1]
        edges.append((min(a, b), max(a, b), p.interior_count))
    return H3Multigraph(vertices=branch, edges=tuple(sorted(edges)))


# -- degree statistics --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DegreeStats:
    out_deg: dict[int, int]
    in_deg: dict[int, int]
    deg: dict[int, int]
    avg_deg: Fraction
    avg_out_deg: Fraction
    v_ge2: frozenset[int]
    h3_form_avg: Fraction | None  # contracted-form recomputation, None if H3 empty


def avg_degrees(h: Component) -> DegreeStats:
    """Exact average (directed) degrees, cross-computed from the contraction."""
    out_deg = {v: h.out_degree(v) for v in h.vertices}
    in_deg = {v: h.in_degree(v) for v in h.vertices}
    deg = {v: out_deg[v] + in_deg[v] for v in h.vertices}
    nv = len(h.vertices)
    avg_deg = Fraction(sum(deg.values()), nv)
    avg_out = Fraction(sum(out_deg.values()), nv)
    h3 = build_h3(h)
    h3_form = None
    if not h3.empty:
        m = len(h3.vertices)
        h3_form = 2 + Fraction(
            sum(deg[u] - 2 for u in h3.vertices), m + h3.total_weight()
        )
    return DegreeStats(
        out_deg=out_deg,
        in_deg=in_deg,
        deg=deg,
        avg_deg=avg_deg,
        avg_out_deg=avg_out,
        v_ge2=h.v_ge2(),
        h3_form_avg=h3_form,
    )


def deg_lower_bound_value(x: Fraction) -> Fraction:
    """f(x) = 2 + 2(x-1)/(1+73x), the contracted-form average-degree floor."""
    x = Fraction(x)
    if x < 1:
        raise ValidationError(f"edge/vertex ratio must be >= 1, got {x}")
    return 2 + Fraction(2) * (x - 1) / (1 + 73 * x)


# -- distances inside H and girth ----------------------------------------------


def distance_layers(h: Component, u: int) -> dict[int, frozenset[int]]:
    """A_{r,H}(u): nodes of H at distance exactly r from u, inside H."""
    dist = h.distances_from(u)
    layers: dict[int, set[int]] = {}
    for v, r in dist.items():
        layers.setdefault(r, set()).add(v)
    return {r: frozenset(vs) for r, vs in sorted(layers.items())}


def beyond_layer(h: Component, u: int, r: int) -> frozenset[int]:
    """B_{>r,H}(u): nodes of H strictly farther than r from u (inside H)."""
    dist = h.distances_from(u)
    reached = frozenset(v for v, d in dist.items() if d > r)
    return reached | (h.vertices - frozenset(dist))


def eccentricity(h: Component, u: int) -> int:
    return max(h.distances_from(u).values())


def induced_distance(g: OwnedGraph, zone: frozenset[int] | set[int], v1: int, v2: int) -> int:
    """Distance between v1 and v2 in the subgraph of g induced by `zone`."""
    if v1 not in zone or v2 not in zone:
        return UNREACHABLE
    dist = {v1: 0}
    frontier = [v1]
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.neighbors(v):
                if w in zone and w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist.get(v2, UNREACHABLE)


def girth(h: Component) -> Cost:
    """Length of the shortest cycle of H; INF when H is acyclic."""
    best: Cost = INF
    for a, b in h.undirected_edges():
        # shortest a-b path avoiding this one edge
        dist = {a: 0}
        frontier = [a]
        while frontier:
            nxt = []
            for v in frontier:
                for w in h.neighbors(v):
                    if (min(v, w), max(v, w)) == (a, b):
                        continue
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        if b in dist:
            cand = Fraction(dist[b] + 1)
            if cand < best:
                best = cand
    return best


def min_usage_node(g: OwnedGraph, h: Component) -> int:
    """Node of H minimising total distance in G; ties broken by smallest id."""
    best_v = None
    best_cost: Cost | None = None
    for v in sorted(h.vertices):
        c = usage_cost(g, v)
        if best_cost is None or c < best_cost:
            best_v, best_cost = v, c
    return best_v


def graph_radius_and_depth(g: OwnedGraph) -> tuple[int, int]:
    """(radius, argmin vertex): BFS depth from a minimum-eccentricity root."""
    best = None
    for v in range(g.n):
        row = g.dist[v]
        if (row == UNREACHABLE).any():
            continue
        ecc = int(row.max())
        if best is None or ecc < best[0]:
            best = (ecc, v)
    if best is None:
        raise ValidationError("graph is disconnected; no finite eccentricity")
    return best


def is_tree(g: OwnedGraph) -> bool:
    return g.connected() and len(g.undirected_edges()) == g.n - 1
