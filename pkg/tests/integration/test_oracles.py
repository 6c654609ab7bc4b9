"""
Integration tests against brute-force oracles: the bijective-game closure,
the recount refinement and the configuration validator, over every small
connected graph of the networkx atlas and a few seeded random graphs.
"""

from itertools import combinations_with_replacement

import networkx as nx
import pytest

from src.refuter.coherent.history import refine
from src.refuter.coherent.naive import naive_refine, same_partition
from src.refuter.coherent.validator import validate_configuration
from src.refuter.derive.oracle import derivable_closure_oracle
from src.refuter.dwl.operations import initial_state
from src.refuter.structures.isomorphism import is_isomorphic
from src.refuter.structures.library import from_graph
from src.refuter.structures.union import disjoint_union


def connected_atlas(n: int) -> list:
    return [from_graph(g) for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


def random_connected(seed: int, n: int = 8, p: float = 0.4):
    graph = nx.gnp_random_graph(n, p, seed=seed)
    while not nx.is_connected(graph):
        seed += 1000
        graph = nx.gnp_random_graph(n, p, seed=seed)
    return from_graph(graph)


@pytest.mark.integration
class TestClosureOracle:
    """Test derivability of 1 against the sketch comparison"""

    @pytest.mark.parametrize("n", [3, 4])
    def test_atlas_pairs(self, n):
        """Test the empty position is derivable exactly for sketch-distinguished pairs"""
        graphs = connected_atlas(n)
        for left, right in combinations_with_replacement(graphs, 2):
            distinguished = not initial_state(left, right).sketches_equal
            assert (frozenset() in derivable_closure_oracle(disjoint_union(left, right))) == distinguished
            assert distinguished == (not is_isomorphic(left, right))

    @pytest.mark.slow
    def test_atlas_pairs_on_five_vertices(self):
        """Test the agreement on all connected 5-vertex pairs"""
        graphs = connected_atlas(5)
        for left, right in combinations_with_replacement(graphs, 2):
            distinguished = not initial_state(left, right).sketches_equal
            assert (frozenset() in derivable_closure_oracle(disjoint_union(left, right))) == distinguished


@pytest.mark.integration
class TestRefinementOracles:
    """Test refinement against recounting and the validator"""

    @pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
    def test_random_graphs(self, seed):
        """Test random connected graphs agree with the recount and pass validation"""
        structure = random_connected(seed)
        history = refine(structure)
        assert same_partition(history.stable, naive_refine(structure))
        report = validate_configuration(history)
        assert report.all_passed, report.to_text()

    @pytest.mark.parametrize("seed", [6, 7])
    def test_random_unions(self, seed):
        """Test unions of random graphs agree with the recount"""
        gh = disjoint_union(random_connected(seed, n=6), random_connected(seed + 1, n=6))
        assert same_partition(refine(gh).stable, naive_refine(gh))
