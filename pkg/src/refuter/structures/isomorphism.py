"""
Exhaustive isomorphism test used as an oracle by the test-suite and the CLI.

Matching runs networkx's VF2 backtracking over a digraph view of the
structure in which every vertex carries the names of the relations containing
its loop and every arc carries the names of the relations containing it.
"""

import logging
from typing import Optional

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from ..errors import SizeLimitError
from .models import Structure

logger = logging.getLogger(__name__)

MAX_VERTICES = 64


def _typed_digraph(structure: Structure) -> nx.DiGraph:
    types = structure.atomic_types
    graph = nx.DiGraph()
    for v in structure.vertices:
        graph.add_node(v, atp=types.names[types.ids[v, v]])
    for name in structure.vocabulary:
        for u, v in structure.relations[name]:
            if u != v:
                graph.add_edge(u, v, atp=types.names[types.ids[u, v]])
    return graph


def find_isomorphism(
    left: Structure, right: Structure, max_vertices: int = MAX_VERTICES
) -> Optional[dict[int, int]]:
    """
    Return a relation-preserving bijection left -> right, or None.

    Raises SIZE_LIMIT when either side exceeds ``max_vertices``.
    """
    if max(left.universe_size, right.universe_size) > max_vertices:
        raise SizeLimitError(f"isomorphism search limited to {max_vertices} vertices")
    if left.universe_size != right.universe_size or left.vocabulary != right.vocabulary:
        return None
    sizes = {name: len(pairs) for name, pairs in left.relations.items()}
    if left.colors != right.colors or sizes != {n: len(p) for n, p in right.relations.items()}:
        return None

    matcher = DiGraphMatcher(
        _typed_digraph(left),
        _typed_digraph(right),
        node_match=lambda a, b: a["atp"] == b["atp"],
        edge_match=lambda a, b: a["atp"] == b["atp"],
    )
    if not matcher.is_isomorphic():
        return None
    mapping = {int(u): int(v) for u, v in matcher.mapping.items()}
    logger.debug(f"Found isomorphism on {left.universe_size} vertices")
    return mapping


def is_isomorphic(left: Structure, right: Structure, max_vertices: int = MAX_VERTICES) -> bool:
    return find_isomorphism(left, right, max_vertices) is not None
