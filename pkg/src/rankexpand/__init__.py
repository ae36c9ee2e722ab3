"""Bounded-tree-width supergraphs containing a given graph as a pivot-minor.

The package builds rank-expansions from rank-decompositions, certifies the
pivot-minor embedding and the decomposition width over GF(2) exactly, and
ships the width-1 characterizations (tree and path hosts) with replayable
witness scripts.
"""

from .decompositions import (RankDecomposition, TreeDecomposition,
                             brute_force_linear_rank_width,
                             brute_force_rank_width, rd_validate, rd_width,
                             td_validate, td_width)
from .expansion import (ExpansionCertificate, ExpansionError, RankExpansion,
                        build_expansion, expansion_path_decomposition,
                        expansion_tree_decomposition, orient_from_leaf,
                        assign_bases, rank_expansion, theorem_driver,
                        verify_certificate, verify_pivot_minor)
from .characterize import (Witness, bipartite_path_witness,
                           bipartite_tree_witness, caterpillar_to_path,
                           has_pivot_minor, has_vertex_minor,
                           is_distance_hereditary, path_witness_lrw1,
                           tree_witness_rw1, validate_witness)
from .graphs import (Graph, GraphError, ScriptError, SizeLimitError,
                     apply_script, cut_rank, local_complement, pivot_edge,
                     pivot_script, pivot_set)
from .gf2 import Gf2Matrix, SingularError, principal_pivot, rank

__version__ = "1.0.0"

__all__ = [
    "Gf2Matrix", "Graph", "GraphError", "RankDecomposition", "RankExpansion",
    "ExpansionCertificate", "ExpansionError", "ScriptError", "SingularError",
    "SizeLimitError", "TreeDecomposition", "Witness", "apply_script",
    "assign_bases", "bipartite_path_witness", "bipartite_tree_witness",
    "brute_force_linear_rank_width", "brute_force_rank_width",
    "build_expansion", "caterpillar_to_path", "cut_rank",
    "expansion_path_decomposition", "expansion_tree_decomposition",
    "has_pivot_minor", "has_vertex_minor", "is_distance_hereditary",
    "local_complement", "orient_from_leaf", "path_witness_lrw1", "pivot_edge",
    "pivot_script", "pivot_set", "principal_pivot", "rank", "rank_expansion",
    "rd_validate", "rd_width", "td_validate", "td_width", "theorem_driver",
    "tree_witness_rw1", "validate_witness", "verify_certificate",
    "verify_pivot_minor",
]
