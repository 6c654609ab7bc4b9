"""
Conversions from networkx graphs plus a few named small structures.

The named structures are the usual desk-scale test inputs: complete graphs,
cycles, the triangular prism, complete bipartite graphs and directed
cycles/paths.
"""

from typing import Mapping, Optional

import networkx as nx

from .models import Structure

EDGE = b"E"


def from_graph(
    graph: nx.Graph,
    relation: bytes = EDGE,
    colours: Optional[Mapping[object, str]] = None,
) -> Structure:
    """
    Encode a networkx graph as a structure.

    Undirected edges become two directed pairs. Nodes are numbered in sorted
    order; ``colours`` maps nodes to colour names, stored as diagonal
    colour relations.
    """
    nodes = sorted(graph.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    pairs = set()
    for u, v in graph.edges:
        pairs.add((index[u], index[v]))
        if not graph.is_directed():
            pairs.add((index[v], index[u]))
    relations: dict[bytes, set[tuple[int, int]]] = {relation: pairs}
    colour_names: set[bytes] = set()
    if colours:
        for node, colour in colours.items():
            name = colour.encode("ascii")
            relations.setdefault(name, set()).add((index[node], index[node]))
            colour_names.add(name)
    return Structure.create(len(nodes), relations, colour_names)


def to_graph(structure: Structure, relation: bytes = EDGE) -> nx.DiGraph:
    """Directed graph of one relation, loops included"""
    graph = nx.DiGraph()
    graph.add_nodes_from(structure.vertices)
    graph.add_edges_from(structure.relations[relation])
    return graph


def complete_graph(n: int) -> Structure:
    if n == 1:
        return Structure.create(1, {EDGE: []})
    return from_graph(nx.complete_graph(n))


def cycle_graph(n: int) -> Structure:
    return from_graph(nx.cycle_graph(n))


def path_graph(n: int) -> Structure:
    return from_graph(nx.path_graph(n))


def prism_graph() -> Structure:
    """Triangular prism: two triangles joined by a perfect matching"""
    return from_graph(nx.circular_ladder_graph(3))


def complete_bipartite_graph(a: int, b: int) -> Structure:
    return from_graph(nx.complete_bipartite_graph(a, b))


def directed_cycle(n: int) -> Structure:
    return from_graph(nx.cycle_graph(n, create_using=nx.DiGraph))


def directed_path(n: int) -> Structure:
    return from_graph(nx.path_graph(n, create_using=nx.DiGraph))
