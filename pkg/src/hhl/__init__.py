"""Learning hidden hypergraphs through simulated edge-detecting queries.

The library covers the adaptive learner, the information-theoretic lower
bound, cover-free code verification, and a Monte-Carlo two-stage strategy
for instances made of disjoint equal-size edges, plus a CLI front end.
"""

from .core import (
    Edge,
    FamilyParams,
    GenerationError,
    Hypergraph,
    VertexSet,
    canonical_edge,
    hypergraph_from_dict,
    hypergraph_to_dict,
    is_sperner,
    load_hypergraph,
    member_of_family,
    random_disjoint_instance,
    random_family_instance,
    save_hypergraph,
)
from .oracle import BudgetExceededError, Oracle, QueryRecord, is_independent
from .learner import (
    LearnReport,
    SearchContractError,
    SearchStats,
    edge_search_query_cap,
    find_active_vertex,
    find_edges_on,
    find_next_query,
    learn,
    learn_detailed,
    query_search_query_cap,
    worst_case_query_budget,
)
from .bounds import (
    RatePoint,
    family_size_asymptotic,
    family_size_exact,
    info_lower_bound,
    rate_point,
)
from .coverfree import (
    BinaryCode,
    WorkLimitExceeded,
    cf_rate_bounds,
    complement,
    find_violation,
    is_cover_free,
    load_code,
    parse_code,
    save_code,
    search_random_cf_code,
    symmetry_check,
)
from .twostage import (
    DecodeError,
    DesignSearchError,
    LayerExpansion,
    LayerMatrix,
    Partition,
    TrialReport,
    build_block_design,
    decode_block,
    expand_layers,
    find_good_layer,
    is_separating_design,
    layer_partition,
    layer_success_probability,
    required_layers,
    sample_layer_matrix,
    two_stage_learn,
    two_stage_trial,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryCode",
    "BudgetExceededError",
    "DecodeError",
    "DesignSearchError",
    "Edge",
    "FamilyParams",
    "GenerationError",
    "Hypergraph",
    "LayerExpansion",
    "LayerMatrix",
    "LearnReport",
    "Oracle",
    "Partition",
    "QueryRecord",
    "RatePoint",
    "SearchContractError",
    "SearchStats",
    "TrialReport",
    "VertexSet",
    "WorkLimitExceeded",
    "build_block_design",
    "canonical_edge",
    "cf_rate_bounds",
    "complement",
    "decode_block",
    "edge_search_query_cap",
    "expand_layers",
    "family_size_asymptotic",
    "family_size_exact",
    "find_active_vertex",
    "find_edges_on",
    "find_good_layer",
    "find_next_query",
    "find_violation",
    "hypergraph_from_dict",
    "hypergraph_to_dict",
    "info_lower_bound",
    "is_cover_free",
    "is_independent",
    "is_separating_design",
    "is_sperner",
    "layer_partition",
    "layer_success_probability",
    "learn",
    "learn_detailed",
    "load_code",
    "load_hypergraph",
    "member_of_family",
    "parse_code",
    "query_search_query_cap",
    "random_disjoint_instance",
    "random_family_instance",
    "rate_point",
    "required_layers",
    "sample_layer_matrix",
    "save_code",
    "save_hypergraph",
    "search_random_cf_code",
    "symmetry_check",
    "two_stage_learn",
    "two_stage_trial",
    "worst_case_query_budget",
]
