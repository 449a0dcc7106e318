"""Influence maximization with game-theoretic centralities.

Seed-selection algorithms (closed-form neighborhood-game Shapley values, a
discounted greedy variant, power indices over per-node local DAGs, greedy
and degree-based baselines), independent cascade / linear threshold
simulators with exact small-instance oracles, and a benchmark CLI.
"""

__version__ = "0.1.0"

from .baselines import degree_discount_select, greedy_ldag_select, lazy_greedy_select
from .centrality import (
    brute_force_shapley,
    dsv_select,
    fringe_shapley,
    fringe_value,
    surrounding_shapley,
    surrounding_value,
    top_k_by_score,
)
from .diffusion import (
    SpreadEstimate,
    estimate_spread,
    exact_spread_ic,
    exact_spread_lt,
    simulate_once,
)
from .errors import (
    ConfigError,
    EdgeListParseError,
    InfmaxError,
    InstanceTooLargeError,
    ValidationError,
)
from .graph import (
    Graph,
    WeightScheme,
    apply_weights,
    load_edge_list,
    save_edge_list,
    undirected_degree,
)
from .ldag import Ldag, activation_probability, build_all_ldags, build_ldag
from .ldag_games import (
    LdagGame,
    exact_index_ldag,
    ldag_index_scores,
    ldag_index_select,
    mc_banzhaf_ldag,
    mc_shapley_ldag,
    merge_indices,
)

__all__ = [
    "Graph",
    "WeightScheme",
    "apply_weights",
    "load_edge_list",
    "save_edge_list",
    "undirected_degree",
    "SpreadEstimate",
    "simulate_once",
    "estimate_spread",
    "exact_spread_ic",
    "exact_spread_lt",
    "fringe_value",
    "surrounding_value",
    "fringe_shapley",
    "surrounding_shapley",
    "brute_force_shapley",
    "dsv_select",
    "top_k_by_score",
    "Ldag",
    "build_ldag",
    "build_all_ldags",
    "activation_probability",
    "LdagGame",
    "mc_shapley_ldag",
    "exact_index_ldag",
    "mc_banzhaf_ldag",
    "merge_indices",
    "ldag_index_scores",
    "ldag_index_select",
    "greedy_ldag_select",
    "lazy_greedy_select",
    "degree_discount_select",
    "InfmaxError",
    "EdgeListParseError",
    "ValidationError",
    "InstanceTooLargeError",
    "ConfigError",
]
