"""Triplet covers of binary phylogenetic X-trees.

Verification of covers and their support structure, construction of
minimum covers, 2-tree recognition of cover graphs, shelling-based
distance completion, exact tree reconstruction from additive metrics,
and exhaustive small-instance oracles.
"""

from .construct import minimalize, minimum_cover, per_vertex_cover
from .cover import (
    CoverError,
    NotACoverError,
    SupportGraph,
    SupportSet,
    TripletCover,
    UniverseMismatchError,
    cover_report,
    is_minimal,
    is_minimum,
    is_triplet_cover,
    parse_pairs,
    support_graph,
    support_set,
    triangles,
    unsupported_vertices,
)
from .oracle import (
    EnumerationReport,
    count_minimum_covers,
    enumerate_covers,
    enumerate_trees,
    verify_theorems,
)
from .shelling import (
    NotAdditiveError,
    NotShellableError,
    ShellingStep,
    ShellingTrace,
    complete_distances,
    find_witness,
    is_shellable,
    reconstruct_tree,
    shelling_closure,
)
from .tree import (
    DistanceMap,
    NewickParseError,
    PhyloTree,
    Quartet,
    TreeError,
    parse_newick,
    random_tree,
    serialize_newick,
)
from .twotree import (
    EliminationOrder,
    SimpleGraph,
    degree_two_vertices,
    is_two_d_tree,
    is_two_tree,
)

__version__ = "0.1.0"

__all__ = [
    "CoverError",
    "DistanceMap",
    "EliminationOrder",
    "EnumerationReport",
    "NewickParseError",
    "NotACoverError",
    "NotAdditiveError",
    "NotShellableError",
    "PhyloTree",
    "Quartet",
    "ShellingStep",
    "ShellingTrace",
    "SimpleGraph",
    "SupportGraph",
    "SupportSet",
    "TreeError",
    "TripletCover",
    "UniverseMismatchError",
    "complete_distances",
    "count_minimum_covers",
    "cover_report",
    "degree_two_vertices",
    "enumerate_covers",
    "enumerate_trees",
    "find_witness",
    "is_minimal",
    "is_minimum",
    "is_shellable",
    "is_triplet_cover",
    "is_two_d_tree",
    "is_two_tree",
    "minimalize",
    "minimum_cover",
    "parse_newick",
    "parse_pairs",
    "per_vertex_cover",
    "random_tree",
    "reconstruct_tree",
    "serialize_newick",
    "shelling_closure",
    "support_graph",
    "support_set",
    "triangles",
    "unsupported_vertices",
    "verify_theorems",
]
