"""One checker per structural bound on equilibrium graphs.

Every checker is total: it returns Holds, Violated{witness}, or
PreconditionNotMet, never crashes on legal input, and never silently skips.
Conditional statements are gated exactly as stated; at desk scale most
threshold-gated checks report PreconditionNotMet, but they still exercise the
computation path.  Overriding any constant marks the result nonstandard.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction

from .asets import (
    DominanceForest,
    TwoEdgeCovering,
    bridge_edges,
    check_exchange_count,
    dominance_forest,
    induced_component,
    make_covering,
)
from .game_core import Cost, GameConfig, Infinity, OwnedGraph, ValidationError
from .structure import (
    Component,
    biconnected_components,
    build_h3,
    avg_degrees,
    girth,
    graph_radius_and_depth,
    min_usage_node,
    two_paths,
)
from .verdicts import CheckResult, Verdict, holds, precondition_not_met, violated


@dataclass(frozen=True)
class VerifierConfig:
    """Named constants of the checked bounds; overrides mark reports nonstandard."""

    two_path_cap: int = 74
    h3_weight_cap: int = 74
    deg_diam_threshold: int = 37
    deg_floor: Fraction = Fraction(222, 221)  # 1 + 1/221
    diameter_gap: int = 154
    hop_cap: int = 77
    hang_frac: Fraction = Fraction(18, 19)
    small_diam_threshold: int = 4
    small_diam_degree_cap: int = 7
    log_base: int = 2
    k_param: Fraction = Fraction(1)
    # explicit overrides for the derived thresholds (None = use the formula)
    leaf_diam_override: Fraction | None = None
    chain_diam_override: Fraction | None = None
    chain_dist_override: Fraction | None = None
    chain_len_override: int | None = None
    bridge_dist_override: Fraction | None = None

    def is_standard(self) -> bool:
        ref = VerifierConfig()
        return all(
            getattr(self, f.name) == getattr(ref, f.name)
            for f in fields(VerifierConfig)
            if f.name != "k_param"
        )


CLAIMS = {
    "two_path_cap": "every maximal degree-2 chain has fewer than 74 interior nodes",
    "h3_weight_cap": "every contracted multi-edge has weight below 74",
    "deg_floor": "average owned degree in a wide component is at least 1 + 1/221",
    "sac": "a zone small in the component carries hanging weight at most alpha/(d_H/2-2X-1)",
    "leaf_weight": "forest leaves carry in-component AA-weight at least K",
    "two_path_weight": "long forest chains far from the root carry total AA-weight at least K",
    "simple_bridge_weight": "a bridged forest 2-node far from the root has AA-weight at least K",
    "exchange_count": "swap-resistant chain: local zone at least as large as the grandchild set",
    "diameter_gap": "graph diameter exceeds component diameter by at most 154",
    "hop_cap": "every node sits within 77 hops of its attachment on the component",
    "hang_cap": "every hanging tree holds at most 18n/19 nodes",
    "girth_floor": "component girth is at least 2*alpha/n + 2",
    "poa_depth": "social cost over optimum is at most BFS depth + 1",
    "degree_cap": "in a diameter-<=4 component nobody owns more than 7 component edges",
}


def _fmt(x) -> str:
    if isinstance(x, Infinity):
        return repr(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


# -- chapter-3 style checks ------------------------------------------------------


def check_two_path_bound(
    g: OwnedGraph, h: Component, vcfg: VerifierConfig, ne_verified: bool, nonstandard: bool = False
) -> CheckResult:
    pre = {"ne_verified": ne_verified}
    if not ne_verified:
        return precondition_not_met("two_path_cap", CLAIMS["two_path_cap"], pre, nonstandard)
    worst = None
    for p in two_paths(h):
        # a closed chain (pure cycle) admits an open sub-chain with two fewer nodes
        k = p.interior_count - 2 if p.closed else p.interior_count
        if worst is None or k > worst[0]:
            worst = (k, p.vertices)
    if worst is None:
        return holds("two_path_cap", CLAIMS["two_path_cap"], {**pre, "paths": 0}, nonstandard)
    k, verts = worst
    if k < vcfg.two_path_cap:
        return holds("two_path_cap", CLAIMS["two_path_cap"], {**pre, "max_interior": k}, nonstandard)
    return violated(
        "two_path_cap",
        CLAIMS["two_path_cap"],
        {"interior_count": k, "path": list(verts), "cap": vcfg.two_path_cap},
        pre,
        nonstandard,
    )


def check_h3_weight_bound(
    g: OwnedGraph, h: Component, vcfg: VerifierConfig, ne_verified: bool, nonstandard: bool = False
) -> CheckResult:
    h3 = build_h3(h)
    pre = {"ne_verified": ne_verified, "h3_nonempty": not h3.empty}
    if not ne_verified or h3.empty:
        return precondition_not_met("h3_weight_cap", CLAIMS["h3_weight_cap"], pre, nonstandard)
    for a, b, w in h3.edges:
        if w >= vcfg.h3_weight_cap:
            return violated(
                "h3_weight_cap",
                CLAIMS["h3_weight_cap"],
                {"edge": [a, b], "weight": w, "cap": vcfg.h3_weight_cap},
                pre,
                nonstandard,
            )
    return holds("h3_weight_cap", CLAIMS["h3_weight_cap"], {**pre, "edges": len(h3.edges)}, nonstandard)


def check_deg_lower_bound(
    g: OwnedGraph, h: Component, vcfg: VerifierConfig, ne_verified: bool, nonstandard: bool = False
) -> CheckResult:
    pre = {
        "ne_verified": ne_verified,
        "diam_h": h.diameter,
        "diam_threshold": vcfg.deg_diam_threshold,
    }
    if not ne_verified or h.diameter < vcfg.deg_diam_threshold:
        return precondition_not_met("deg_floor", CLAIMS["deg_floor"], pre, nonstandard)
    stats = avg_degrees(h)
    if stats.avg_out_deg >= vcfg.deg_floor:
        return holds(
            "deg_floor", CLAIMS["deg_floor"], {**pre, "avg_out_deg": _fmt(stats.avg_out_deg)}, nonstandard
        )
    return violated(
        "deg_floor",
        CLAIMS["deg_floor"],
        {"avg_out_deg": _fmt(stats.avg_out_deg), "floor": _fmt(vcfg.deg_floor)},
        pre,
        nonstandard,
    )


# -- the small-zone hanging-weight bound ------------------------------------------


def check_sac(
    cfg: GameConfig,
    g: OwnedGraph,
    h: Component,
    zone,
    x_bound: int,
    ne_verified: bool,
    nonstandard: bool = False,
) -> CheckResult:
    zone = frozenset(zone)
    if not zone <= h.vertices:
        raise ValidationError("zone must lie inside the component")
    sub_adj = {v: [w for w in h.neighbors(v) if w in zone] for v in zone}
    start = min(zone)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sub_adj[v]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    if seen != zone:
        raise ValidationError("zone is not connected inside the component")
    diam_z = 0
    for v in zone:
        dist = {v: 0}
        frontier = [v]
        while frontier:
            nxt = []
            for a in frontier:
                for b in sub_adj[a]:
                    if b not in dist:
                        dist[b] = dist[a] + 1
                        nxt.append(b)
            frontier = nxt
        diam_z = max(diam_z, max(dist.values()))
    pre = {
        "ne_verified": ne_verified,
        "zone_diameter": diam_z,
        "x_bound": x_bound,
        "diam_h": h.diameter,
        "requires_diam_h": 4 * x_bound + 3,
    }
    if not ne_verified or diam_z > x_bound or h.diameter < 4 * x_bound + 3:
        return precondition_not_met("sac", CLAIMS["sac"], pre, nonstandard)
    denom = Fraction(h.diameter, 2) - 2 * x_bound - 1
    limit = cfg.alpha / denom
    total = sum(h.hanging_weight[v] for v in zone)
    if Fraction(total) <= limit:
        return holds("sac", CLAIMS["sac"], {**pre, "total": total, "limit": _fmt(limit)}, nonstandard)
    return violated(
        "sac",
        CLAIMS["sac"],
        {"zone": sorted(zone), "total": total, "limit": _fmt(limit)},
        pre,
        nonstandard,
    )


# -- AA-weight checks over the canonical forest ------------------------------------


def _canonical_forest(g: OwnedGraph, h: Component) -> tuple[int, TwoEdgeCovering, DominanceForest]:
    u = min_usage_node(g, h)
    j = make_covering(h, "lex2")
    return u, j, dominance_forest(g, h, u, j)


def _alpha_gap_threshold(k: Fraction, alpha: Fraction, n: int) -> Fraction:
    return 1 + 4 * k * alpha / (alpha - n)


def check_leaf_weight(
    cfg: GameConfig,
    g: OwnedGraph,
    h: Component,
    vcfg: VerifierConfig,
    ne_verified: bool,
    forest: DominanceForest | None = None,
    nonstandard: bool = False,
) -> CheckResult:
    k = vcfg.k_param
    pre = {"ne_verified": ne_verified, "alpha_gt_n": bool(cfg.alpha > cfg.n), "k": _fmt(k)}
    if not ne_verified or cfg.alpha <= cfg.n:
        return precondition_not_met("leaf_weight", CLAIMS["leaf_weight"], pre, nonstandard)
    threshold = (
        vcfg.leaf_diam_override
        if vcfg.leaf_diam_override is not None
        else 6 * k * cfg.alpha / (cfg.alpha - cfg.n) + 4 * k + 2
    )
    pre["diam_h"] = h.diameter
    pre["diam_threshold"] = _fmt(threshold)
    if Fraction(h.diameter) <= threshold:
        return precondition_not_met("leaf_weight", CLAIMS["leaf_weight"], pre, nonstandard)
    u, j, forest = (forest.root_node, None, forest) if forest else _canonical_forest(g, h)
    for r in forest.roots:
        for v in forest.tree_nodes(r):
            if forest.children[v]:
                continue
            if Fraction(forest.aa_weight[v]) < k:
                return violated(
                    "leaf_weight",
                    CLAIMS["leaf_weight"],
                    {"leaf": v, "aa_weight": forest.aa_weight[v], "k": _fmt(k)},
                    pre,
                    nonstandard,
                )
    return holds("leaf_weight", CLAIMS["leaf_weight"], pre, nonstandard)


def _min_chain_half_length(vcfg: VerifierConfig, alpha: Fraction, n: int) -> int:
    """Smallest integer l with base^(l-1) >= 9*alpha/(alpha-n)."""
    if vcfg.chain_len_override is not None:
        return vcfg.chain_len_override
    target = 9 * alpha / (alpha - n)
    l = 1
    power = Fraction(1)
    while power < target:
        power *= vcfg.log_base
        l += 1
    return l


def check_two_path_aa(
    cfg: GameConfig,
    g: OwnedGraph,
    h: Component,
    vcfg: VerifierConfig,
    ne_verified: bool,
    forest: DominanceForest | None = None,
    nonstandard: bool = False,
) -> CheckResult:
    k = vcfg.k_param
    pre = {"ne_verified": ne_verified, "alpha_gt_n": bool(cfg.alpha > cfg.n), "k": _fmt(k)}
    if not ne_verified or cfg.alpha <= cfg.n:
        return precondition_not_met("two_path_weight", CLAIMS["two_path_weight"], pre, nonstandard)
    diam_threshold = (
        vcfg.chain_diam_override if vcfg.chain_diam_override is not None else Fraction(36) * k + 18
    )
    pre["diam_h"] = h.diameter
    pre["diam_threshold"] = _fmt(diam_threshold)
    if Fraction(h.diameter) <= diam_threshold:
        return precondition_not_met("two_path_weight", CLAIMS["two_path_weight"], pre, nonstandard)
    half_len = _min_chain_half_length(vcfg, cfg.alpha, cfg.n)
    dist_threshold = (
        vcfg.chain_dist_override
        if vcfg.chain_dist_override is not None
        else _alpha_gap_threshold(k, cfg.alpha, cfg.n)
    )
    pre["half_len"] = half_len
    pre["dist_threshold"] = _fmt(dist_threshold)
    u, j, forest = (forest.root_node, None, forest) if forest else _canonical_forest(g, h)
    applicable = 0
    for chain in forest.chains(2 * half_len + 2):
        v1 = chain[1]
        if Fraction(g.d(forest.root_node, v1)) < dist_threshold:
            continue
        applicable += 1
        total = sum(forest.aa_weight[v] for v in chain[1:-1])
        if Fraction(total) < k:
            return violated(
                "two_path_weight",
                CLAIMS["two_path_weight"],
                {"chain": list(chain), "total": total, "k": _fmt(k)},
                pre,
                nonstandard,
            )
    if applicable == 0:
        pre["applicable_chains"] = 0
        return precondition_not_met("two_path_weight", CLAIMS["two_path_weight"], pre, nonstandard)
    pre["applicable_chains"] = applicable
    return holds("two_path_weight", CLAIMS["two_path_weight"], pre, nonstandard)


def check_simple_bridge(
    cfg: GameConfig,
    g: OwnedGraph,
    h: Component,
    vcfg: VerifierConfig,
    ne_verified: bool,
    forest: DominanceForest | None = None,
    nonstandard: bool = False,
) -> CheckResult:
    k = vcfg.k_param
    pre = {"ne_verified": ne_verified, "alpha_gt_n": bool(cfg.alpha > cfg.n), "k": _fmt(k)}
    if not ne_verified or cfg.alpha <= cfg.n:
        return precondition_not_met("simple_bridge_weight", CLAIMS["simple_bridge_weight"], pre, nonstandard)
    dist_threshold = (
        vcfg.bridge_dist_override
        if vcfg.bridge_dist_override is not None
        else _alpha_gap_threshold(k, cfg.alpha, cfg.n)
    )
    pre["dist_threshold"] = _fmt(dist_threshold)
    u, j, forest = (forest.root_node, None, forest) if forest else _canonical_forest(g, h)
    applicable = 0
    for w0, w1, w2 in forest.chains(3):
        if Fraction(g.d(forest.root_node, w1)) < dist_threshold:
            continue
        a1 = forest.a_sets[w1].members
        zone = induced_component(g, a1 - {w1}, w2)
        inner = (zone | {w1}) - forest.a_sets[w2].members
        outer = set(range(g.n)) - (zone | {w1})
        if not bridge_edges(g, inner, outer, exclude=w1):
            continue
        applicable += 1
        if Fraction(forest.aa_weight[w1]) < k:
            return violated(
                "simple_bridge_weight",
                CLAIMS["simple_bridge_weight"],
                {"chain": [w0, w1, w2], "aa_weight": forest.aa_weight[w1], "k": _fmt(k)},
                pre,
                nonstandard,
            )
    if applicable == 0:
        pre["applicable_sites"] = 0
        return precondition_not_met("simple_bridge_weight", CLAIMS["simple_bridge_weight"], pre, nonstandard)
    pre["applicable_sites"] = applicable
    return holds("simple_bridge_weight", CLAIMS["simple_bridge_weight"], pre, nonstandard)


def check_tec(
    cfg: GameConfig,
    g: OwnedGraph,
    h: Component,
    vcfg: VerifierConfig,
    ne_verified: bool,
    forest: DominanceForest | None = None,
    nonstandard: bool = False,
) -> CheckResult:
    if forest is None:
        _, j, forest = _canonical_forest(g, h)
    else:
        j = None
    return check_exchange_count(
        g,
        h,
        forest.root_node,
        j or make_covering(h, "lex2"),
        alpha=cfg.alpha,
        n=cfg.n,
        k_param=vcfg.k_param,
        ne_verified=ne_verified,
        forest=forest,
        nonstandard=nonstandard,
    )


# -- chapter-5 style checks ---------------------------------------------------------


def _attachment_map(g: OwnedGraph, h: Component) -> dict[int, int]:
    attach = {v: v for v in h.vertices}
    for v in h.vertices:
        allowed = (set(range(g.n)) - h.vertices) | {v}
        comp = induced_component(g, allowed, v)
        for x in comp:
            attach[x] = v
    return attach


def check_diameter_gap(
    cfg: GameConfig,
    g: OwnedGraph,
    h: Component | None,
    vcfg: VerifierConfig,
    ne_verified: bool,
    nonstandard: bool = False,
) -> list[CheckResult]:
    """Headline diameter inequality plus its hop / hanging-weight sub-checks."""
    pre = {
        "ne_verified": ne_verified,
        "alpha_gt_n": bool(cfg.alpha > cfg.n),
        "has_component": h is not None,
    }
    out = []
    if not ne_verified or cfg.alpha <= cfg.n or h is None:
        for cid in ("diameter_gap", "hop_cap", "hang_cap"):
            out.append(precondition_not_met(cid, CLAIMS[cid], pre, nonstandard))
        return out
    diam_g = max(int(g.dist.max()), 0)
    if diam_g <= h.diameter + vcfg.diameter_gap:
        out.append(
            holds("diameter_gap", CLAIMS["diameter_gap"], {**pre, "diam_g": diam_g, "diam_h": h.diameter}, nonstandard)
        )
    else:
        out.append(
            violated(
                "diameter_gap",
                CLAIMS["diameter_gap"],
                {"diam_g": diam_g, "diam_h": h.diameter, "gap": vcfg.diameter_gap},
                pre,
                nonstandard,
            )
        )
    attach = _attachment_map(g, h)
    worst_hop = max((g.d(x, attach[x]), x) for x in range(cfg.n))
    if worst_hop[0] <= vcfg.hop_cap:
        out.append(holds("hop_cap", CLAIMS["hop_cap"], {**pre, "max_hop": worst_hop[0]}, nonstandard))
    else:
        out.append(
            violated(
                "hop_cap",
                CLAIMS["hop_cap"],
                {"node": worst_hop[1], "hops": worst_hop[0], "cap": vcfg.hop_cap},
                pre,
                nonstandard,
            )
        )
    limit = vcfg.hang_frac * cfg.n
    worst_hang = max((w, v) for v, w in h.hanging_weight.items())
    if Fraction(worst_hang[0]) <= limit:
        out.append(holds("hang_cap", CLAIMS["hang_cap"], {**pre, "max_weight": worst_hang[0]}, nonstandard))
    else:
        out.append(
            violated(
                "hang_cap",
                CLAIMS["hang_cap"],
                {"node": worst_hang[1], "weight": worst_hang[0], "limit": _fmt(limit)},
                pre,
                nonstandard,
            )
        )
    return out


def check_girth_floor(
    cfg: GameConfig,
    g: OwnedGraph,
    h: Component | None,
    vcfg: VerifierConfig,
    ne_verified: bool,
    nonstandard: bool = False,
) -> CheckResult:
    pre = {"ne_verified": ne_verified, "has_component": h is not None}
    if not ne_verified or h is None:
        return precondition_not_met("girth_floor", CLAIMS["girth_floor"], pre, nonstandard)
    floor = 2 * cfg.alpha / cfg.n + 2
    gv = girth(h)
    if gv >= floor:
        return holds(
            "girth_floor", CLAIMS["girth_floor"], {**pre, "girth": _fmt(gv), "floor": _fmt(floor)}, nonstandard
        )
    return violated(
        "girth_floor",
        CLAIMS["girth_floor"],
        {"girth": _fmt(gv), "floor": _fmt(floor)},
        pre,
        nonstandard,
    )


def check_poa_depth(
    cfg: GameConfig,
    g: OwnedGraph,
    opt_cost: Cost | None,
    vcfg: VerifierConfig,
    ne_verified: bool,
    nonstandard: bool = False,
) -> CheckResult:
    from .game_core import cost

    pre = {
        "ne_verified": ne_verified,
        "opt_known": opt_cost is not None,
        "connected": g.connected(),
    }
    if not ne_verified or opt_cost is None or not g.connected():
        return precondition_not_met("poa_depth", CLAIMS["poa_depth"], pre, nonstandard)
    depth, root = graph_radius_and_depth(g)
    social = cost(cfg, g).social
    ratio = social / opt_cost
    pre.update({"depth": depth, "root": root})
    if ratio <= depth + 1:
        return holds("poa_depth", CLAIMS["poa_depth"], {**pre, "ratio": _fmt(ratio)}, nonstandard)
    return violated(
        "poa_depth",
        CLAIMS["poa_depth"],
        {"ratio": _fmt(ratio), "depth": depth, "social": _fmt(social), "opt": _fmt(opt_cost)},
        pre,
        nonstandard,
    )


def check_degree_cap(
    cfg: GameConfig,
    g: OwnedGraph,
    h: Component | None,
    vcfg: VerifierConfig,
    ne_verified: bool,
    nonstandard: bool = False,
) -> CheckResult:
    pre = {"ne_verified": ne_verified, "has_component": h is not None}
    if not ne_verified or h is None:
        return precondition_not_met("degree_cap", CLAIMS["degree_cap"], pre, nonstandard)
    worst = max((h.out_degree(v), v) for v in h.vertices)
    pre["diam_h"] = h.diameter
    pre["max_out_degree"] = worst[0]
    if h.diameter > vcfg.small_diam_threshold:
        # no finite stated cap here; report the empirical maximum
        pre["empirical_only"] = True
        return holds("degree_cap", CLAIMS["degree_cap"], pre, nonstandard)
    if worst[0] <= vcfg.small_diam_degree_cap:
        return holds("degree_cap", CLAIMS["degree_cap"], pre, nonstandard)
    return violated(
        "degree_cap",
        CLAIMS["degree_cap"],
        {"node": worst[1], "out_degree": worst[0], "cap": vcfg.small_diam_degree_cap},
        pre,
        nonstandard,
    )


# -- suite runner ----------------------------------------------------------------

SUITE_IDS = (
    "two_path_cap",
    "h3_weight_cap",
    "deg_floor",
    "sac",
    "leaf_weight",
    "two_path_weight",
    "simple_bridge_weight",
    "exchange_count",
    "diameter_gap",
    "hop_cap",
    "hang_cap",
    "girth_floor",
    "poa_depth",
    "degree_cap",
)

EXACT_VERIFY_GUARD = 14  # exact NE verification in the suite up to this n


def run_suite(
    cfg: GameConfig,
    g: OwnedGraph,
    vcfg: VerifierConfig | None = None,
    check_ids=None,
    ne_verified: bool | None = None,
    opt_cost: Cost | None = None,
    nonstandard: bool = False,
) -> list[CheckResult]:
    """Run the selected checkers over every non-trivial component of g.

    `ne_verified=None` verifies equilibrium exactly when n is small enough;
    pass True only for decreed nonstandard inputs (negative controls).
    """
    from .equilibrium import Exact, is_nash

    vcfg = vcfg or VerifierConfig()
    nonstandard = nonstandard or not vcfg.is_standard()
    wanted = set(check_ids or SUITE_IDS)
    unknown = wanted - set(SUITE_IDS)
    if unknown:
        raise ValidationError(f"unknown checker ids: {sorted(unknown)}")
    if ne_verified is None:
        if cfg.n <= EXACT_VERIFY_GUARD:
            ne_verified = is_nash(cfg, g.strategy(), Exact()).is_ne
        else:
            ne_verified = False
    comps = biconnected_components(g) if g.connected() else []
    results: list[CheckResult] = []

    def tag(res: CheckResult, comp_idx: int | None) -> CheckResult:
        if comp_idx is None:
            return res
        pre = dict(res.preconditions)
        pre["component"] = comp_idx
        return CheckResult(res.check_id, res.claim, res.verdict, res.witness, pre, res.nonstandard)

    per_component = {
        "two_path_cap": lambda h: check_two_path_bound(g, h, vcfg, ne_verified, nonstandard),
        "h3_weight_cap": lambda h: check_h3_weight_bound(g, h, vcfg, ne_verified, nonstandard),
        "deg_floor": lambda h: check_deg_lower_bound(g, h, vcfg, ne_verified, nonstandard),
        "leaf_weight": lambda h: check_leaf_weight(cfg, g, h, vcfg, ne_verified, nonstandard=nonstandard),
        "two_path_weight": lambda h: check_two_path_aa(cfg, g, h, vcfg, ne_verified, nonstandard=nonstandard),
        "simple_bridge_weight": lambda h: check_simple_bridge(cfg, g, h, vcfg, ne_verified, nonstandard=nonstandard),
        "exchange_count": lambda h: check_tec(cfg, g, h, vcfg, ne_verified, nonstandard=nonstandard),
        "girth_floor": lambda h: check_girth_floor(cfg, g, h, vcfg, ne_verified, nonstandard),
        "degree_cap": lambda h: check_degree_cap(cfg, g, h, vcfg, ne_verified, nonstandard),
    }
    no_component_pre = {"ne_verified": ne_verified, "has_component": False}
    for cid in SUITE_IDS:
        if cid not in wanted:
            continue
        if cid == "sac":
            # zone-parameterised; the suite runs the X=0 singleton form per vertex
            if not comps:
                results.append(precondition_not_met("sac", CLAIMS["sac"], no_component_pre, nonstandard))
            for idx, h in enumerate(comps):
                worst: CheckResult | None = None
                for v in sorted(h.vertices):
                    r = check_sac(cfg, g, h, {v}, 0, ne_verified, nonstandard)
                    if r.verdict is Verdict.VIOLATED:
                        worst = r
                        break
                    if worst is None or r.verdict is Verdict.HOLDS:
                        worst = r
                results.append(tag(worst, idx))
            continue
        if cid == "diameter_gap":
            if not comps:
                results.extend(check_diameter_gap(cfg, g, None, vcfg, ne_verified, nonstandard))
            for idx, h in enumerate(comps):
                results.extend(tag(r, idx) for r in check_diameter_gap(cfg, g, h, vcfg, ne_verified, nonstandard))
            continue
        if cid in ("hop_cap", "hang_cap"):
            continue  # emitted together with diameter_gap
        if cid == "poa_depth":
            results.append(check_poa_depth(cfg, g, opt_cost, vcfg, ne_verified, nonstandard))
            continue
        fn = per_component[cid]
        if not comps:
            results.append(precondition_not_met(cid, CLAIMS[cid], dict(no_component_pre), nonstandard))
        for idx, h in enumerate(comps):
            results.append(tag(fn(h), idx))
    results.sort(key=lambda r: (r.check_id, str(r.preconditions.get("component", -1))))
    return results
