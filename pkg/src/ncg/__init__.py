"""Exact laboratory for the sum classic network creation game.

Players buy links at a rational price alpha; cost = alpha * (links bought) +
sum of hop distances.  The package verifies Nash equilibria exactly, analyses
the topology of equilibrium graphs (biconnected components, hanging trees,
contracted branch multigraph, dependency-set forests), machine-checks the
structural bounds that drive constant price-of-anarchy arguments, and
exhaustively enumerates equilibria on small instances.
"""
from .game_core import (
    GameConfig,
    StrategyVector,
    OwnedGraph,
    CostReport,
    INF,
    NEG_INF,
    UNREACHABLE,
    GameError,
    ValidationError,
    FormatError,
    build_graph,
    cost,
    usage_cost,
    read_ncg,
    write_ncg,
    to_ncg_text,
    from_ncg_text,
)
from .equilibrium import (
    Buy,
    Delete,
    Swap,
    MultiDeleteBuy,
    Replace,
    Exact,
    Restricted,
    NashVerdict,
    apply_deviation,
    best_response_exact,
    delete_k_buy_bound,
    buy_link_lower_bound_check,
    is_nash,
)
from .structure import (
    Component,
    H3Multigraph,
    DegreeStats,
    biconnected_components,
    build_h3,
    avg_degrees,
    deg_lower_bound_value,
    two_paths,
    girth,
    min_usage_node,
)
from .asets import (
    ASet,
    TwoEdgeCovering,
    DominanceForest,
    InvariantViolation,
    GuardError,
    make_covering,
    a_set,
    dependency_set,
    dominance_forest,
    bridge_edges,
    bridge_clique_graph,
    lemma_checkers,
)
from .verdicts import Verdict, CheckResult
from .verifiers import VerifierConfig, run_suite
from .search import (
    EnumerationConfig,
    NashCatalog,
    PoAEstimate,
    enumerate_nash,
    optimum_social_cost,
    poa_exact,
    tree_conjecture_sweep,
    isomorphism_dedup,
    save_catalog,
    load_catalog,
)

__version__ = "0.1.0"
