"""Exact partition functions of polynomial constraint satisfaction problems."""

from .analyze import (
    ConditionalTable,
    Readout,
    conditional_partition,
    construct_optimal,
    count_optimal,
    extract,
    format_report,
    sample_gibbs,
    sample_gibbs_many,
    sample_optimal,
    sample_optimal_many,
)
from .encodings import (
    CspInstance,
    WeightedDigraph,
    WeightedGraph,
    combine_simultaneous,
    encode_clique,
    encode_ising,
    encode_judicious,
    encode_max_cut,
    encode_max_dicut,
    lift_csp,
)
from .instance import (
    ConstraintGraph,
    GuardExceeded,
    InvalidInstance,
    PcspInstance,
    brute_force_partition,
    read_instance,
    restrict,
    score_assignment,
    validate,
    write_instance,
)
from .reduce import branch_type3, reduce_type0, reduce_type1, reduce_type2, solve_reductive
from .ring import (
    FloatRing,
    Poly,
    PolyRing,
    Registry,
    coefficient_of,
    evaluate,
    max_degree,
    parse,
    prune_z,
    render,
)
from .solve import solve
from .splitlist import GroupSplit, build_matrices, solve_splitlist
from .treedp import (
    TreeDecomposition,
    assign_scores_to_bags,
    greedy_decomposition,
    read_td,
    solve_treedp,
    validate_decomposition,
    write_td,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionalTable",
    "Readout",
    "conditional_partition",
    "construct_optimal",
    "count_optimal",
    "extract",
    "format_report",
    "sample_gibbs",
    "sample_gibbs_many",
    "sample_optimal",
    "sample_optimal_many",
    "CspInstance",
    "WeightedDigraph",
    "WeightedGraph",
    "combine_simultaneous",
    "encode_clique",
    "encode_ising",
    "encode_judicious",
    "encode_max_cut",
    "encode_max_dicut",
    "lift_csp",
    "ConstraintGraph",
    "GuardExceeded",
    "InvalidInstance",
    "PcspInstance",
    "brute_force_partition",
    "read_instance",
    "restrict",
    "score_assignment",
    "validate",
    "write_instance",
    "branch_type3",
    "reduce_type0",
    "reduce_type1",
    "reduce_type2",
    "solve_reductive",
    "FloatRing",
    "Poly",
    "PolyRing",
    "Registry",
    "coefficient_of",
    "evaluate",
    "max_degree",
    "parse",
    "prune_z",
    "render",
    "solve",
    "GroupSplit",
    "build_matrices",
    "solve_splitlist",
    "TreeDecomposition",
    "assign_scores_to_bags",
    "greedy_decomposition",
    "read_td",
    "solve_treedp",
    "validate_decomposition",
    "write_td",
]
