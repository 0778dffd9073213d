"""Upward straight-line embeddings into convex point sets."""

from .blocks import (AuxiliaryTree, Block, BlockDecomposition, BlockShape,
                     StructuralCheck, auxiliary_tree, block_decompose,
                     block_shape, construct_one_sided, one_side_embeddable,
                     outer_cycle, structural_check)
from .digraph import Digraph, RootedTree, SubtreeInfo, subtree_decompose
from .embedding import Embedding, ValidationReport, validate_exact, validate_upse
from .errors import InputError, OracleBoundError, StructureError, UpseError
from .outerplanar import (OuterPathDecomposition, OuterRestrictedSolver,
                          outer_path_decompose, outerplanar_upse_all,
                          outerplanar_upse_fixed, reachable_roots_outerplanar,
                          restricted_upse_outerplanar, upward_skeleton)
from .points import (ConvexPointSet, PointRange, chords_cross,
                     hull_cyclic_order, point_subrange, realize_coordinates)
from .tree import (PathDecomposition, ProperOrdering, RestrictedDpTable,
                   RestrictedSolver, one_sided_embed, path_decompose,
                   proper_ordering, reachable_roots_tree, restricted_upse_tree,
                   tree_upse_all, tree_upse_all_pairs, tree_upse_fixed)

__all__ = [
    "AuxiliaryTree", "Block", "BlockDecomposition", "BlockShape",
    "StructuralCheck", "auxiliary_tree", "block_decompose", "block_shape",
    "construct_one_sided", "one_side_embeddable", "outer_cycle",
    "structural_check",
    "Digraph", "RootedTree", "SubtreeInfo", "subtree_decompose",
    "Embedding", "ValidationReport", "validate_exact", "validate_upse",
    "InputError", "OracleBoundError", "StructureError", "UpseError",
    "OuterPathDecomposition", "OuterRestrictedSolver", "outer_path_decompose",
    "outerplanar_upse_all", "outerplanar_upse_fixed",
    "reachable_roots_outerplanar", "restricted_upse_outerplanar",
    "upward_skeleton",
    "ConvexPointSet", "PointRange", "chords_cross", "hull_cyclic_order",
    "point_subrange", "realize_coordinates",
    "PathDecomposition", "ProperOrdering", "RestrictedDpTable",
    "RestrictedSolver", "one_sided_embed", "path_decompose",
    "proper_ordering", "reachable_roots_tree", "restricted_upse_tree",
    "tree_upse_all", "tree_upse_all_pairs", "tree_upse_fixed",
]
