"""Leveled expander constructions with exact random-walk mixing diagnostics."""

from .construction import (
    ConstructionParams,
    build,
    build_cubic,
    build_cylinder,
    build_five_regular,
    build_no_cutoff,
    choose_L,
    cylinder_vertex_count,
    leaf_level,
    level_census,
    standalone_cylinder,
    theoretical_tstar,
)
from .expanders import CertifiedExpander, ExpanderSpec, certify_gap, make_expander
from .graphs import (
    AUXILIARY,
    LEAF,
    PATH_INTERIOR,
    TREE_NODE,
    UNLEVELED,
    GraphBuilder,
    GraphError,
    LeveledGraph,
    assert_regular,
    build_tree,
    contract_paths,
    from_text,
    graft_stretched_trees,
    interconnect_interiors,
    is_bipartite,
    is_connected,
    line_graph_embed,
    stretch_edges,
    to_text,
)
from .mixing import (
    MixingSummary,
    TVProfile,
    cutoff_report,
    default_laziness,
    default_starts,
    mixing_time,
    step,
    tv_profile,
    tv_profile_until,
    tv_to_uniform,
)
from .montecarlo import (
    DescentChain,
    HittingStats,
    bimodality_check,
    chain_hitting_stats,
    cylinder_passage_exact,
    cylinder_passage_oracle,
    descent_chain,
    hitting_mixing_ratio,
    hitting_stats,
    path_passage_exact,
    path_passage_oracle,
    predicted_tau,
    sample_hitting_time,
    sample_hitting_times,
    stretched_edge_delay,
    stretched_edge_delay_mc,
)
from .spectral import (
    NoCutoffCertificate,
    SpectralReport,
    cheeger_bounds,
    cheeger_bruteforce,
    cheeger_sandwich,
    dirichlet_gap_upper,
    distance_test_function,
    exact_walk_gap,
    no_cutoff_certificate,
    spectral_report,
)

__version__ = "0.1.0"
