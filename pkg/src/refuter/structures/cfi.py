"""
Cai-Fürer-Immerman companions of a base graph.

Every base vertex v becomes a vertex gadget with one vertex per even-size
subset S of the edges at v; every base edge e becomes an edge gadget with the
two vertices (e,0) and (e,1), joined by the symmetric relation ``P``. The
vertex (v,S) is adjacent to (e,1) when e ∈ S and to (e,0) otherwise. The
twisted companion flips that rule at the larger endpoint of the
lexicographically least base edge. ``P`` is invariant under swapping the two
vertices of any edge gadget and keeps the companions connected over leaves
of the base graph.

Each gadget is its own colour class (``cv<v>`` for vertex gadgets,
``ce<u>_<w>`` for edge gadgets). The ordered variant adds the relation
``le`` holding (a,b) whenever the gadget of a does not come after the gadget
of b, which orders the gadgets without ordering vertices inside a gadget.
"""

import itertools
import logging

from ..errors import StructureError
from .models import Pair, Structure

logger = logging.getLogger(__name__)

EDGE = b"E"
SIBLING = b"P"
PREORDER = b"le"


def _base_edges(base: Structure) -> list[Pair]:
    pairs = {pair for relation in base.relations.values() for pair in relation}
    edges = set()
    for u, v in pairs:
        if u == v:
            raise StructureError("CFI base graph must be loopless")
        if (v, u) not in pairs:
            raise StructureError("CFI base graph must be undirected")
        edges.add((min(u, v), max(u, v)))
    return sorted(edges)


def _companion(base: Structure, edges: list[Pair], twisted: bool, ordered: bool) -> Structure:
    n = base.universe_size
    incident = {v: [e for e in edges if v in e] for v in base.vertices}
    twist = (edges[0], edges[0][1]) if twisted else None

    index: dict[tuple, int] = {}
    rank: list[int] = []
    colours: dict[bytes, list[Pair]] = {}
    for v in base.vertices:
        name = f"cv{v}".encode("ascii")
        colours[name] = []
        for size in range(0, len(incident[v]) + 1, 2):
            for subset in itertools.combinations(incident[v], size):
                vertex = len(index)
                index[("v", v, frozenset(subset))] = vertex
                colours[name].append((vertex, vertex))
                rank.append(v)
    for position, (a, b) in enumerate(edges):
        name = f"ce{a}_{b}".encode("ascii")
        colours[name] = []
        for bit in (0, 1):
            vertex = len(index)
            index[("e", (a, b), bit)] = vertex
            colours[name].append((vertex, vertex))
            rank.append(n + position)

    siblings: list[Pair] = []
    for e in edges:
        low, high = index[("e", e, 0)], index[("e", e, 1)]
        siblings.extend([(low, high), (high, low)])

    adjacency: list[Pair] = []
    for (kind, v, subset), vertex in index.items():
        if kind != "v":
            continue
        for e in incident[v]:
            bit = int(e in subset)
            if twist == (e, v):
                bit ^= 1
            target = index[("e", e, bit)]
            adjacency.extend([(vertex, target), (target, vertex)])

    relations: dict[bytes, list[Pair]] = {EDGE: adjacency, SIBLING: siblings, **colours}
    if ordered:
        size = len(index)
        relations[PREORDER] = [
            (a, b) for a in range(size) for b in range(size) if rank[a] <= rank[b]
        ]
    return Structure.create(len(index), relations, colours)


def cfi_pair(
    base: Structure, *, twisted: bool = True, ordered: bool = False
) -> tuple[Structure, Structure]:
    """
    Build the untwisted companion and, when ``twisted``, the twisted one.

    With ``twisted=False`` the second entry is a separately built untwisted
    companion. Raises BASE_NOT_CONNECTED for a disconnected base.
    """
    if not base.is_connected():
        raise StructureError("CFI base graph is not connected", code="BASE_NOT_CONNECTED")
    edges = _base_edges(base)
    if not edges:
        raise StructureError("CFI base graph needs at least one edge", code="BASE_NOT_CONNECTED")
    untwisted = _companion(base, edges, twisted=False, ordered=ordered)
    other = _companion(base, edges, twisted=twisted, ordered=ordered)
    logger.info(
        f"Built CFI companions over {base.universe_size} base vertices: "
        f"{untwisted.universe_size} vertices per side"
    )
    return untwisted, other
