"""Batch command-line interface: gen, check, analyze, asets, verify, enumerate,
poa, sweep.

Exit codes for check/verify: 0 = equilibrium / nothing violated, 1 = refuted /
some check violated, 2 = usage or input error.  All randomness sits behind
--seed; --threads only partitions work, never changes any output byte.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from .asets import (
    GuardError,
    InvariantViolation,
    dominance_forest,
    make_covering,
)
from .equilibrium import Exact, Restricted, deviation_str, is_nash
from .game_core import (
    FormatError,
    GameConfig,
    StrategyVector,
    ValidationError,
    build_graph,
    cost,
    fmt_cost,
    parse_rational,
    read_ncg,
    to_ncg_text,
)
from .search import (
    DEFAULT_BUDGET,
    EnumerationConfig,
    enumerate_nash,
    load_catalog,
    poa_exact,
    save_catalog,
    tree_conjecture_sweep,
)
from .structure import (
    avg_degrees,
    biconnected_components,
    build_h3,
    girth,
    graph_radius_and_depth,
    is_tree,
    min_usage_node,
)
from .verdicts import Verdict
from .verifiers import VerifierConfig, run_suite

SCHEMA = 1


def _emit(args, payload: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(payload, encoding="ascii")
    else:
        sys.stdout.write(payload)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _read_input(args) -> tuple[GameConfig, StrategyVector]:
    if not args.input:
        raise ValidationError("--input is required")
    return read_ncg(args.input)


# -- gen ---------------------------------------------------------------------


def _gen_strategy(args) -> tuple[GameConfig, StrategyVector]:
    import random

    n = args.n
    family = args.family
    if family == "theta":
        legs = [int(t) for t in args.legs.split(",")] if args.legs else []
        if len(legs) != 3 or any(l < 1 for l in legs) or sorted(legs)[1] < 2:
            raise ValidationError("theta needs --legs a,b,c with three edge counts, at most one equal to 1")
        n = 2 + sum(l - 1 for l in legs)
        buys: list[list[int]] = [[] for _ in range(n)]
        nxt = 2
        for leg in legs:
            prev = 0
            for _ in range(leg - 1):
                buys[prev].append(nxt)
                prev, nxt = nxt, nxt + 1
            buys[prev].append(1)
        cfg = GameConfig(n, parse_rational(args.alpha))
        return cfg, StrategyVector.from_lists(buys)
    if n is None:
        raise ValidationError("--n is required")
    cfg = GameConfig(n, parse_rational(args.alpha))
    if family == "star":
        buys = [[v for v in range(1, n)]] + [[] for _ in range(n - 1)]
    elif family == "path":
        buys = [[u + 1] if u + 1 < n else [] for u in range(n)]
    elif family == "cycle":
        if n < 3:
            raise ValidationError("cycle needs n >= 3")
        buys = [[(u + 1) % n] for u in range(n)]
    elif family == "complete":
        buys = [[v for v in range(u + 1, n)] for u in range(n)]
    elif family == "random":
        prob = parse_rational(args.p)
        if not 0 <= prob <= 1:
            raise ValidationError(f"edge probability must be in [0,1], got {prob}")
        rng = random.Random(f"gen:{args.seed}")
        buys = [[] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.randrange(prob.denominator) < prob.numerator:
                    if rng.randrange(2):
                        buys[j].append(i)
                    else:
                        buys[i].append(j)
    else:
        raise ValidationError(f"unknown family {family!r}")
    return cfg, StrategyVector.from_lists(buys)


def cmd_gen(args) -> int:
    cfg, s = _gen_strategy(args)
    _emit(args, to_ncg_text(cfg, s))
    return 0


# -- check --------------------------------------------------------------------


def cmd_check(args) -> int:
    cfg, s = _read_input(args)
    mode = Restricted(k_cap=args.k) if args.mode == "restricted" else Exact()
    verdict = is_nash(cfg, s, mode)
    g = build_graph(cfg, s)
    rep = cost(cfg, g)
    if args.json:
        obj = {
            "schema": SCHEMA,
            "n": cfg.n,
            "alpha": fmt_cost(cfg.alpha),
            "mode": args.mode,
            "is_ne": verdict.is_ne,
            "witness": deviation_str(verdict.witness) if verdict.witness else None,
            "connected": rep.connected,
            "social_cost": fmt_cost(rep.social),
            "per_player": [fmt_cost(c) for c in rep.per_player],
        }
        _emit_json(args, obj)
    else:
        lines = [f"n={cfg.n} alpha={fmt_cost(cfg.alpha)} mode={args.mode}"]
        lines.append("player  buys            creation  usage     total")
        for u in range(cfg.n):
            buys = ",".join(str(v) for v in sorted(s.buys[u])) or "-"
            lines.append(
                f"{u:<7} {buys:<15} {fmt_cost(rep.creation[u]):<9} "
                f"{fmt_cost(rep.usage[u]):<9} {fmt_cost(rep.per_player[u])}"
            )
        lines.append(f"social cost: {fmt_cost(rep.social)}")
        lines.append(f"verdict: {'NE' if verdict.is_ne else 'not NE'}")
        if verdict.witness is not None:
            lines.append(f"witness: {deviation_str(verdict.witness)}")
        _emit(args, "\n".join(lines) + "\n")
    return 0 if verdict.is_ne else 1


# -- analyze --------------------------------------------------------------------


def cmd_analyze(args) -> int:
    cfg, s = _read_input(args)
    g = build_graph(cfg, s)
    rep = cost(cfg, g)
    comps = biconnected_components(g) if g.connected() else []
    comp_objs = []
    for h in comps:
        stats = avg_degrees(h)
        h3 = build_h3(h)
        comp_objs.append(
            {
                "vertices": sorted(h.vertices),
                "edges": sorted(map(list, h.edges)),
                "diameter": h.diameter,
                "hanging_weights": {str(v): w for v, w in sorted(h.hanging_weight.items())},
                "h3": None
                if h3.empty
                else {"vertices": sorted(h3.vertices), "edges": [list(e) for e in h3.edges]},
                "degree_stats": {
                    "avg_deg": fmt_cost(stats.avg_deg),
                    "avg_out_deg": fmt_cost(stats.avg_out_deg),
                    "h3_form_avg": None if stats.h3_form_avg is None else fmt_cost(stats.h3_form_avg),
                    "v_ge2": sorted(stats.v_ge2),
                },
                "girth": fmt_cost(girth(h)),
                "min_usage_node": min_usage_node(g, h),
            }
        )
    obj = {
        "schema": SCHEMA,
        "n": cfg.n,
        "alpha": fmt_cost(cfg.alpha),
        "connected": rep.connected,
        "is_tree": is_tree(g),
        "social_cost": fmt_cost(rep.social),
        "components": comp_objs,
        "canonical": to_ncg_text(cfg, s),
    }
    if rep.connected:
        depth, root = graph_radius_and_depth(g)
        obj["bfs_depth"] = depth
        obj["bfs_root"] = root
    _emit_json(args, obj)
    return 0


# -- asets ----------------------------------------------------------------------


def cmd_asets(args) -> int:
    cfg, s = _read_input(args)
    g = build_graph(cfg, s)
    if not g.connected():
        raise ValidationError("dependency sets need a connected graph")
    comps = biconnected_components(g)
    if not comps:
        raise ValidationError("no non-trivial biconnected component")
    if not 0 <= args.component < len(comps):
        raise ValidationError(f"--component {args.component} out of range ({len(comps)} components)")
    h = comps[args.component]
    if args.covering.startswith("@"):
        raw = json.loads(Path(args.covering[1:]).read_text(encoding="ascii"))
        explicit = {int(v): [tuple(e) for e in edges] for v, edges in raw.items()}
        j = make_covering(h, "explicit", explicit)
    else:
        j = make_covering(h, args.covering)
    if args.root == "auto":
        root = min_usage_node(g, h)
    else:
        root = int(args.root)
        if root not in h.vertices:
            raise ValidationError(f"root {root} not in the component")
    forest = dominance_forest(g, h, root, j)
    per_v = {}
    for v in forest.nodes:
        aset = forest.a_sets[v]
        per_v[str(v)] = {
            "a_set": sorted(aset.members),
            "per_edge": {f"{a}->{b}": sorted(sub) for (a, b), sub in aset.per_edge.items()},
            "aa_set": sorted(forest.aa_sets[v]),
            "aa_weight": forest.aa_weight[v],
        }
    obj = {
        "schema": SCHEMA,
        "component": args.component,
        "component_vertices": sorted(h.vertices),
        "root": root,
        "covering": {
            "policy": j.policy,
            "map": {str(v): [list(e) for e in j.entries[v]] for v in sorted(j.entries)},
        },
        "nodes": list(forest.nodes),
        "forest_edges": sorted([p, c] for c, p in forest.parent.items() if p is not None),
        "forest_roots": list(forest.roots),
        "per_v": per_v,
    }
    _emit_json(args, obj)
    return 0


# -- verify -----------------------------------------------------------------------


def _suite_ids(arg: str):
    if arg == "all":
        return None
    ids = tuple(t.strip() for t in arg.split(",") if t.strip())
    return ids


def _verify_one(cfg, s, args) -> list:
    from .search import optimum_social_cost

    g = build_graph(cfg, s)
    vcfg = VerifierConfig(k_param=parse_rational(args.k))
    opt_cost = None
    if cfg.n <= 6:
        opt_cost, _ = optimum_social_cost(cfg.n, cfg.alpha)
    ne_verified = True if args.nonstandard else None
    return run_suite(
        cfg,
        g,
        vcfg,
        check_ids=_suite_ids(args.suite),
        ne_verified=ne_verified,
        opt_cost=opt_cost,
        nonstandard=args.nonstandard,
    )


def cmd_verify(args) -> int:
    if bool(args.input) == bool(args.catalog):
        raise ValidationError("exactly one of --input or --catalog is required")
    reports = []
    if args.input:
        cfg, s = read_ncg(args.input)
        reports.append((Path(args.input).name, _verify_one(cfg, s, args)))
    else:
        catalog = load_catalog(args.catalog)
        cfg = catalog.config.game()
        for i, s in enumerate(catalog.entries):
            reports.append((f"ne_{i:06d}.ncg", _verify_one(cfg, s, args)))
    any_violated = any(
        r.verdict is Verdict.VIOLATED for _, results in reports for r in results
    )
    if args.json:
        obj = {
            "schema": SCHEMA,
            "inputs": [
                {"input": name, "checks": [r.to_dict() for r in results]}
                for name, results in reports
            ],
            "any_violated": any_violated,
        }
        _emit_json(args, obj)
    else:
        lines = []
        for name, results in reports:
            lines.append(f"== {name}")
            for r in results:
                detail = r.witness if r.verdict is Verdict.VIOLATED else r.preconditions
                lines.append(f"{r.check_id:<22} {r.verdict.value:<22} {json.dumps(detail, sort_keys=True)}")
        lines.append(f"any violated: {any_violated}")
        _emit(args, "\n".join(lines) + "\n")
    return 1 if any_violated else 0


# -- enumerate / poa / sweep ---------------------------------------------------------


def cmd_enumerate(args) -> int:
    config = EnumerationConfig(
        n=args.n,
        alpha=parse_rational(args.alpha),
        mode=args.mode,
        dedup=args.dedup,
        seed=args.seed,
        starts=args.starts,
        max_steps=args.max_steps,
        budget=args.budget,
    )
    catalog = enumerate_nash(config, threads=args.threads)
    if not args.output:
        raise ValidationError("--output directory is required")
    save_catalog(catalog, args.output)
    sys.stdout.write(
        f"{len(catalog.entries)} NE ({catalog.provenance}) over {catalog.scanned} "
        f"scanned -> {args.output}\n"
    )
    return 0


def cmd_poa(args) -> int:
    est = poa_exact(args.n, parse_rational(args.alpha), threads=args.threads, budget=args.budget)
    obj = {
        "schema": SCHEMA,
        "n": est.n,
        "alpha": fmt_cost(est.alpha),
        "opt_cost": fmt_cost(est.opt_cost),
        "worst_ne_cost": fmt_cost(est.worst_cost),
        "poa": fmt_cost(est.poa),
        "exact": est.exact,
        "reference_bounds": [
            {"range": desc, "bound": bound, "satisfied": ok} for desc, bound, ok in est.reference_bounds
        ],
    }
    if args.json:
        _emit_json(args, obj)
    else:
        _emit(
            args,
            f"n={est.n} alpha={fmt_cost(est.alpha)} poa={fmt_cost(est.poa)} "
            f"(opt={fmt_cost(est.opt_cost)}, worst NE={fmt_cost(est.worst_cost)})\n",
        )
    return 0


def _parse_n_range(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+):(\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise ValidationError(f"bad n range {text!r}")
        return list(range(lo, hi + 1))
    return [int(t) for t in text.split(",")]


def _alpha_token(token: str, n: int) -> Fraction:
    token = token.strip()
    m = re.fullmatch(r"(\d+)n", token)
    if m:
        return Fraction(int(m.group(1)) * n)
    m = re.fullmatch(r"n\+(.+)", token)
    if m:
        return n + parse_rational(m.group(1))
    if "n" in token:
        raise ValidationError(f"unsupported alpha expression {token!r}")
    return parse_rational(token)


def cmd_sweep(args) -> int:
    ns = _parse_n_range(args.n_range)
    tokens = [t for t in args.alphas.split(",") if t.strip()]
    points = [(n, _alpha_token(t, n)) for n in ns for t in tokens]
    report = tree_conjecture_sweep(points, threads=args.threads, budget=args.budget)
    falsified = [pt for pt in report if pt.falsifies]
    if args.json:
        obj = {
            "schema": SCHEMA,
            "points": [
                {
                    "n": pt.n,
                    "alpha": fmt_cost(pt.alpha),
                    "ne": pt.ne_count,
                    "trees": pt.tree_count,
                    "conjecture_applies": pt.conjecture_applies,
                    "falsifies": pt.falsifies,
                    "non_tree_witnesses": [
                        to_ncg_text(GameConfig(pt.n, pt.alpha), s) for s in pt.non_tree_witnesses
                    ],
                }
                for pt in report
            ],
            "falsification": bool(falsified),
        }
        _emit_json(args, obj)
    else:
        lines = []
        for pt in report:
            status = "FALSIFIED" if pt.falsifies else ("ok" if pt.conjecture_applies else "out-of-range")
            lines.append(
                f"n={pt.n} alpha={fmt_cost(pt.alpha)}: {pt.ne_count} NE, "
                f"{pt.tree_count} trees [{status}]"
            )
        _emit(args, "\n".join(lines) + "\n")
    return 1 if falsified else 0


# -- parser ----------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    threads_default = int(os.environ.get("NCG_THREADS", "1"))

    def add_common(p, *, inputs=False, output=False, jsonf=False, threads=False, seed=False):
        if inputs:
            p.add_argument("--input", help="canonical .ncg file")
        if output:
            p.add_argument("--output", help="output path (default: stdout)")
        if jsonf:
            p.add_argument("--json", action="store_true", help="machine-readable output")
        if threads:
            p.add_argument("--threads", type=int, default=threads_default)
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="generate fixture graphs in canonical format")
    p.add_argument("family", choices=["star", "path", "cycle", "complete", "theta", "random"])
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", required=True)
    p.add_argument("--legs", help="theta: three path edge counts a,b,c")
    p.add_argument("--p", default="1/2", help="random: edge probability (rational)")
    add_common(p, output=True, seed=True)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("check", help="equilibrium check (exit 0 = NE, 1 = refuted)")
    p.add_argument("--mode", choices=["exact", "restricted"], default="exact")
    p.add_argument("--k", type=int, default=3, help="restricted mode: multi-delete cap")
    add_common(p, inputs=True, output=True, jsonf=True)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("analyze", help="structural JSON report")
    add_common(p, inputs=True, output=True)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("asets", help="dependency sets, forest, AA weights (JSON)")
    p.add_argument("--root", default="auto", help="auto = min total distance in the component")
    p.add_argument("--covering", default="lex2", help="lex2 | all | @file.json")
    p.add_argument("--component", type=int, default=0)
    add_common(p, inputs=True, output=True)
    p.set_defaults(fn=cmd_asets)

    p = sub.add_parser("verify", help="bound checkers (exit 1 if anything violated)")
    p.add_argument("--catalog", help="catalog directory instead of --input")
    p.add_argument("--suite", default="all", help="all or comma-separated checker ids")
    p.add_argument("--k", default="1", help="K parameter for weight checks")
    p.add_argument("--nonstandard", action="store_true", help="decree equilibrium preconditions (negative controls)")
    add_common(p, inputs=True, output=True, jsonf=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("enumerate", help="catalog all NE at (n, alpha)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--mode", choices=["exhaustive", "brd"], default="exhaustive")
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--starts", type=int, default=32, help="brd: number of seeded starts")
    p.add_argument("--max-steps", type=int, default=200, help="brd: max round-robin passes")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_common(p, output=True, threads=True, seed=True)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("poa", help="exact price of anarchy at (n, alpha)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_common(p, output=True, jsonf=True, threads=True)
    p.set_defaults(fn=cmd_poa)

    p = sub.add_parser("sweep", help="tree-conjecture sweep over (n, alpha) grid")
    p.add_argument("--n-range", required=True, help="e.g. 2:5 or 2,4,6")
    p.add_argument("--alphas", required=True, help="comma list: rationals, n+r, or kn")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_common(p, output=True, jsonf=True, threads=True)
    p.set_defaults(fn=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValidationError, FormatError, GuardError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violation (falsification event): {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
