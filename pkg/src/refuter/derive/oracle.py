"""Brute-force closure of derivable positions via the bijective 3-pebble game."""

import logging
from itertools import combinations
from typing import Optional

import networkx as nx
from networkx.algorithms.bipartite import hopcroft_karp_matching

from ..config import get_settings
from ..errors import SizeLimitError
from ..polysys.piso import is_local_isomorphism
from ..structures.models import Pair, UnionStructure

logger = logging.getLogger(__name__)

Position = frozenset[Pair]


def _sub_positions(pebbles: frozenset[Pair], pebble: Pair) -> list[Position]:
    return [frozenset(s) | {pebble} for r in range(2) for s in combinations(pebbles - {pebble}, r)]


def derivable_closure_oracle(gh: UnionStructure, max_side: Optional[int] = None) -> set[Position]:
    """
    Every position of at most two pebbles (the empty one included) from
    which Spoiler wins.

    Seeds are the positions that are not local isomorphisms. A position
    joins the closure when it contains a member, or when Duplicator has no
    bijection LEFT → RIGHT all of whose placements (x, f(x)) extend it to a
    local isomorphism avoiding every member containing (x, f(x)).
    """
    limit = max_side if max_side is not None else get_settings().oracle_max_side
    if max(gh.left_size, gh.right_size) > limit:
        raise SizeLimitError(
            f"oracle is limited to {limit} vertices per side, got "
            f"{gh.left_size} and {gh.right_size}"
        )

    atp = gh.structure.atomic_types.ids
    pebbles = [(v, w) for v in gh.left_vertices for w in gh.right_vertices]
    positions: list[Position] = [frozenset()]
    positions += [frozenset([p]) for p in pebbles]
    positions += [frozenset(pair) for pair in combinations(pebbles, 2)]

    closure: set[Position] = {p for p in positions if p and not is_local_isomorphism(atp, p)}
    left_nodes = [("l", v) for v in gh.left_vertices]

    def spoiler_wins(position: Position) -> bool:
        if any(position - {p} in closure for p in position):
            return True
        graph = nx.Graph()
        graph.add_nodes_from(left_nodes, bipartite=0)
        graph.add_nodes_from((("r", w) for w in gh.right_vertices), bipartite=1)
        for placed in pebbles:
            extended = position | {placed}
            if not is_local_isomorphism(atp, extended):
                continue
            if any(sub in closure for sub in _sub_positions(extended, placed)):
                continue
            graph.add_edge(("l", placed[0]), ("r", placed[1]))
        if gh.left_size != gh.right_size:
            return True
        matching = hopcroft_karp_matching(graph, top_nodes=left_nodes)
        return len(matching) < 2 * gh.left_size

    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for position in positions:
            if position not in closure and spoiler_wins(position):
                closure.add(position)
                changed = True

    logger.debug(f"Oracle closure has {len(closure)} of {len(positions)} positions after {rounds} rounds")
    return closure
