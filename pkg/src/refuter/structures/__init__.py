"""
Binary relational structures.

Structures, disjoint unions with side tracking, the graph file format, CFI
companions and an exhaustive isomorphism oracle.
"""

from .cfi import cfi_pair
from .isomorphism import find_isomorphism, is_isomorphic
from .library import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    directed_cycle,
    directed_path,
    from_graph,
    path_graph,
    prism_graph,
)
from .models import Pair, Side, Structure, UnionStructure
from .parser import load_structure, parse_structure, save_structure, serialize_structure
from .union import disjoint_union

__all__ = [
    "Pair",
    "Side",
    "Structure",
    "UnionStructure",
    "cfi_pair",
    "complete_bipartite_graph",
    "complete_graph",
    "cycle_graph",
    "directed_cycle",
    "directed_path",
    "disjoint_union",
    "find_isomorphism",
    "from_graph",
    "is_isomorphic",
    "load_structure",
    "parse_structure",
    "path_graph",
    "prism_graph",
    "save_structure",
    "serialize_structure",
]
