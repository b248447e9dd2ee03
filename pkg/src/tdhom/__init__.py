"""Homomorphism counts over graphs of bounded tree depth and counting-logic equivalence.

Exact integer counts throughout; every fast engine has an exhaustive
reference implementation to check against.
"""

from .counterexample import STAR_PALETTE, CounterexampleBundle, StarSpec, build_counterexample, check_fo2_sentence, star, star_hom
from .decomposition import (
    Decomposed,
    RootedForest,
    decompose,
    height,
    induced_subtree,
    is_elimination_forest,
    is_elimination_tree,
    rooted_sum,
    tree_depth,
)
from .enumeration import canonical_form, canonical_key, enum_conn_tdk, enum_decomposed, enum_graphs
from .exceptions import CapacityError, ConstructionError, InputError, NotASubtreeError, TdhomError
from .games import ck_equivalent, ck_partitions, fo_equivalent
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    quotient_delete,
    radius,
)
from .homcount import HomVector, emb_count, epi_count, hom_count, hom_count_td, hom_vector
from .restricted import pi_hom_count, pp_hom_count, s_epi_count, theorem_pp_check
from .witness import (
    ExponentVector,
    MismatchReport,
    distinguishing_pattern,
    exponent_vector,
    matching_bijection,
    verify_equivalence_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ConstructionError", "CounterexampleBundle", "Decomposed", "ExponentVector",
    "Graph", "HomVector", "InputError", "MismatchReport", "NotASubtreeError", "RootedForest",
    "STAR_PALETTE", "StarSpec", "TdhomError", "build_counterexample", "canonical_form", "canonical_key",
    "check_fo2_sentence", "ck_equivalent", "ck_partitions", "complete_graph", "cycle_graph", "decompose",
    "disjoint_union", "distinguishing_pattern", "emb_count", "empty_graph", "enum_conn_tdk",
    "enum_decomposed", "enum_graphs", "epi_count", "exponent_vector", "fo_equivalent", "height",
    "hom_count", "hom_count_td", "hom_vector", "induced_subtree", "is_elimination_forest",
    "is_elimination_tree", "matching_bijection", "path_graph", "pi_hom_count", "pp_hom_count",
    "quotient_delete", "radius", "rooted_sum", "s_epi_count", "star", "star_hom", "theorem_pp_check",
    "tree_depth", "verify_equivalence_theorem",
]
