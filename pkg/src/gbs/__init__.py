"""Generalized Baumslag-Solitar groups as edge-indexed graphs.

Graphs, the four elementary moves, modular invariants, full reduction,
slide closures, the isomorphism decision and deformation normalization.
"""

from .canonical import Isomorphism, are_equivalent, canonical_form, find_isomorphism
from .errors import GBSError
from .fullreduce import AdmissiblePath, find_admissible_path, full_reduce, is_admissible
from .graph import EdgeIndexedGraph, EdgePair, OrientedEdge, edge_graph, fundamental_cycles, loop_graph, parse_graph
from .moduli import ModuliLattice, has_nontrivial_integral_modulus, integral_coset, modular_group
from .moves import Collapse, Elementary, Expansion, Induction, Slide, classify_elementary, reduce, replay
from .rewrite import MoveSequenceRun, normalize_CSE, rewrite_step
from .slidespace import Verdict, decide_isomorphic, slide_closure, slide_neighbors

__all__ = [
    "AdmissiblePath",
    "Collapse",
    "EdgeIndexedGraph",
    "EdgePair",
    "Elementary",
    "Expansion",
    "GBSError",
    "Induction",
    "Isomorphism",
    "ModuliLattice",
    "MoveSequenceRun",
    "OrientedEdge",
    "Slide",
    "Verdict",
    "are_equivalent",
    "canonical_form",
    "classify_elementary",
    "decide_isomorphic",
    "edge_graph",
    "find_admissible_path",
    "find_isomorphism",
    "full_reduce",
    "fundamental_cycles",
    "has_nontrivial_integral_modulus",
    "integral_coset",
    "is_admissible",
    "loop_graph",
    "modular_group",
    "normalize_CSE",
    "parse_graph",
    "reduce",
    "replay",
    "rewrite_step",
    "slide_closure",
    "slide_neighbors",
]
