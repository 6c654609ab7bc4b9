"""Strongly connected components of a single stable colour."""

from typing import Iterable

import networkx as nx

from ..structures.models import Pair
from .history import ColorHistory


def components_of(pairs: Iterable[Pair]) -> list[tuple[int, ...]]:
    """
    SCCs of a digraph given by its arcs.

    Paths have length at least one, so a singleton counts only when it
    carries a loop. Components are sorted internally and by least member.
    """
    graph = nx.DiGraph()
    graph.add_edges_from(pairs)
    components = []
    for component in nx.strongly_connected_components(graph):
        members = tuple(sorted(component))
        if len(members) == 1 and not graph.has_edge(members[0], members[0]):
            continue
        components.append(members)
    return sorted(components)


def sccs_of_color(h: ColorHistory, colour: int) -> list[tuple[int, ...]]:
    """SCCs of the digraph formed by one stable colour"""
    return components_of(h.pairs_of(colour))
