"""
Unit tests for structures: models, graph files, unions, CFI companions and
the isomorphism oracle.
"""

import networkx as nx
import pytest

from src.refuter.errors import StructureError, StructureParseError
from src.refuter.structures.cfi import cfi_pair
from src.refuter.structures.isomorphism import find_isomorphism, is_isomorphic
from src.refuter.structures.library import EDGE, complete_graph, cycle_graph, from_graph, path_graph
from src.refuter.structures.models import Side, Structure
from src.refuter.structures.parser import parse_structure, serialize_structure
from src.refuter.structures.union import disjoint_union


def connected_bases(n: int) -> list[Structure]:
    return [from_graph(g) for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


TRIANGLE = """\
# a triangle with one red vertex
structure n=3
rel E
0 1
1 0
1 2
2 1
0 2
2 0

rel blue color
1 1
2 2

rel red color
0 0
"""


@pytest.mark.unit
class TestStructureModel:
    """Test Structure construction and derived data"""

    def test_create_sorts_vocabulary(self):
        """Test that create sorts relation names bytewise"""
        s = Structure.create(2, {b"b": [(0, 1)], b"a": [(1, 0)]})
        assert s.vocabulary == (b"a", b"b")

    def test_pair_outside_universe_rejected(self):
        """Test that pairs must lie inside the universe"""
        with pytest.raises(StructureError):
            Structure.create(2, {EDGE: [(0, 2)]})

    def test_colour_relation_must_be_diagonal(self):
        """Test that a colour relation with an off-diagonal pair is rejected"""
        with pytest.raises(StructureError):
            Structure.create(2, {b"c": [(0, 1)]}, {b"c"})

    def test_vertex_colour(self):
        """Test vertex colours are the colour relations containing the loop"""
        s = parse_structure(TRIANGLE)
        assert s.vertex_colour(0) == frozenset({b"red"})
        assert s.same_colour(1, 2)
        assert not s.same_colour(0, 1)

    def test_relabel_is_isomorphic(self):
        """Test relabelling produces an isomorphic copy"""
        c5 = cycle_graph(5)
        relabelled = c5.relabel([2, 4, 1, 3, 0])
        assert relabelled != c5
        assert is_isomorphic(c5, relabelled)

    def test_relabel_requires_permutation(self):
        """Test relabel rejects a non-permutation"""
        with pytest.raises(StructureError):
            cycle_graph(3).relabel([0, 0, 1])

    def test_connectivity(self):
        """Test connectivity ignores loops and direction"""
        assert path_graph(4).is_connected()
        disconnected = Structure.create(3, {EDGE: [(0, 1), (2, 2)]})
        assert not disconnected.is_connected()


@pytest.mark.unit
class TestGraphFiles:
    """Test the graph file parser and serializer"""

    def test_parse_triangle(self):
        """Test parsing relations, colour flags and comments"""
        s = parse_structure(TRIANGLE)
        assert s.universe_size == 3
        assert s.colors == frozenset({b"blue", b"red"})
        assert len(s.relations[EDGE]) == 6

    def test_serialization_is_fixpoint(self):
        """Test serialize(parse(serialize(s))) == serialize(s)"""
        text = serialize_structure(parse_structure(TRIANGLE))
        assert serialize_structure(parse_structure(text)) == text

    def test_missing_header(self):
        """Test a file without header is a parse error on line 1"""
        with pytest.raises(StructureParseError) as excinfo:
            parse_structure("rel E\n0 1\n")
        assert excinfo.value.code == "PARSE_ERROR"
        assert excinfo.value.line == 1

    def test_vertex_out_of_range(self):
        """Test out-of-range vertices report their line"""
        with pytest.raises(StructureParseError) as excinfo:
            parse_structure("structure n=2\nrel E\n0 5\n")
        assert excinfo.value.line == 3

    def test_duplicate_relation(self):
        """Test duplicate relation names are rejected"""
        with pytest.raises(StructureParseError):
            parse_structure("structure n=2\nrel E\n0 1\n\nrel E\n1 0\n")

    def test_arbitrary_byte_names_round_trip(self):
        """Test names with spaces, commas and non-ASCII bytes survive serialization"""
        odd = b"has space,\xff%"
        s = Structure.create(2, {odd: [(0, 1)], EDGE: [(1, 0)]})
        text = serialize_structure(s)
        assert "rel has%20space%2C%FF%25" in text
        reparsed = parse_structure(text)
        assert reparsed == s
        assert reparsed.relations[odd] == frozenset({(0, 1)})

    def test_escaped_and_plain_names_coincide(self):
        """Test an escape of a plain byte names the same relation"""
        with pytest.raises(StructureParseError):
            parse_structure("structure n=2\nrel E\n0 1\n\nrel %45\n1 0\n")

    def test_empty_name_rejected(self):
        """Test relation names must be non-empty"""
        with pytest.raises(StructureError):
            Structure.create(2, {b"": [(0, 1)]})

    def test_pair_outside_block(self):
        """Test pair lines must follow a relation header"""
        with pytest.raises(StructureParseError):
            parse_structure("structure n=2\n0 1\n")

    def test_colours_must_partition_diagonal(self):
        """Test a vertex without colour is a validation error"""
        text = "structure n=2\nrel E\n0 1\n1 0\n\nrel c color\n0 0\n"
        with pytest.raises(StructureError) as excinfo:
            parse_structure(text)
        assert excinfo.value.code == "VALIDATION_ERROR"


@pytest.mark.unit
class TestDisjointUnion:
    """Test disjoint unions"""

    def test_right_side_is_shifted(self):
        """Test RIGHT vertices follow the LEFT ones"""
        gh = disjoint_union(path_graph(2), complete_graph(3))
        assert (gh.left_size, gh.right_size, gh.size) == (2, 3, 5)
        assert (2, 3) in gh.structure.relations[EDGE]
        assert gh.side(1) == Side.LEFT and gh.side(2) == Side.RIGHT
        assert gh.is_crossing(0, 4)
        assert gh.local_index(4) == 2

    def test_side_structure_roundtrip(self):
        """Test side_structure recovers each input"""
        left, right = cycle_graph(4), path_graph(3)
        gh = disjoint_union(left, right)
        assert gh.side_structure(Side.LEFT) == left
        assert gh.side_structure(Side.RIGHT) == right

    def test_vocabulary_mismatch(self):
        """Test unions over different vocabularies are rejected"""
        other = Structure.create(2, {b"F": [(0, 1), (1, 0)]})
        with pytest.raises(StructureError) as excinfo:
            disjoint_union(path_graph(2), other)
        assert excinfo.value.code == "VOCAB_MISMATCH"

    def test_disconnected_side(self):
        """Test NOT_CONNECTED is raised for a disconnected input"""
        disconnected = Structure.create(2, {EDGE: []})
        with pytest.raises(StructureError) as excinfo:
            disjoint_union(path_graph(2), disconnected)
        assert excinfo.value.code == "NOT_CONNECTED"

    def test_single_vertices(self, k1):
        """Test K1 ⊎ K1 is a valid union"""
        gh = disjoint_union(k1, k1)
        assert gh.size == 2


@pytest.mark.unit
class TestIsomorphism:
    """Test the VF2-based isomorphism oracle"""

    def test_mapping_preserves_edges(self):
        """Test the returned bijection maps edges to edges"""
        left = cycle_graph(6)
        right = left.relabel([3, 5, 1, 0, 2, 4])
        mapping = find_isomorphism(left, right)
        assert mapping is not None
        for u, v in left.relations[EDGE]:
            assert (mapping[u], mapping[v]) in right.relations[EDGE]

    def test_prism_not_k33(self, prism, k33):
        """Test prism and K3,3 are not isomorphic"""
        assert not is_isomorphic(prism, k33)

    def test_size_mismatch(self):
        """Test different sizes are never isomorphic"""
        assert not is_isomorphic(cycle_graph(4), cycle_graph(5))


@pytest.mark.unit
class TestCfi:
    """Test CFI companion construction"""

    def test_k4_sizes(self, cfi_k4):
        """Test K4 companions have 4·4 gadget plus 6·2 edge vertices"""
        untwisted, twisted = cfi_k4
        assert untwisted.universe_size == 28
        assert twisted.universe_size == 28
        assert untwisted.is_connected() and twisted.is_connected()

    def test_untwisted_pair_is_built_twice(self):
        """Test twisted=False returns two equal but separately built companions"""
        left, right = cfi_pair(complete_graph(3), twisted=False)
        assert left == right
        assert left is not right

    def test_k2_companions_are_connected(self):
        """Test the companions over K2 are connected and form a union"""
        left, right = cfi_pair(complete_graph(2), twisted=False)
        assert left.universe_size == 2 + 2
        assert left.is_connected()
        gh = disjoint_union(left, right)
        assert gh.size == 8
        assert is_isomorphic(left, right)

    def test_k2_twisted_not_isomorphic(self):
        """Test the twist over K2 moves one endpoint to the other edge vertex"""
        left, right = cfi_pair(complete_graph(2))
        assert right.is_connected()
        assert not is_isomorphic(left, right)

    @pytest.mark.parametrize("n", [2, 3])
    def test_small_bases(self, n):
        """Test every connected base on n vertices: untwisted isomorphic, twisted not"""
        for base in connected_bases(n):
            untwisted, copy = cfi_pair(base, twisted=False)
            _, twisted = cfi_pair(base)
            assert untwisted.is_connected() and twisted.is_connected()
            assert is_isomorphic(untwisted, copy)
            assert not is_isomorphic(untwisted, twisted)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [4, 5])
    def test_larger_bases(self, n):
        """Test the same property over every connected base on four and five vertices"""
        for base in connected_bases(n):
            untwisted, copy = cfi_pair(base, twisted=False)
            _, twisted = cfi_pair(base)
            assert is_isomorphic(untwisted, copy)
            assert not is_isomorphic(untwisted, twisted)

    def test_ordered_adds_preorder(self):
        """Test the ordered variant carries the le relation"""
        left, _ = cfi_pair(complete_graph(3), ordered=True)
        assert b"le" in left.vocabulary

    def test_disconnected_base(self):
        """Test a disconnected base is rejected"""
        base = Structure.create(3, {EDGE: [(0, 1), (1, 0)]})
        with pytest.raises(StructureError) as excinfo:
            cfi_pair(base)
        assert excinfo.value.code == "BASE_NOT_CONNECTED"

    @pytest.mark.slow
    def test_twisted_triangle_not_isomorphic(self):
        """Test the twisted companion over K3 is not isomorphic to the untwisted one"""
        left, right = cfi_pair(complete_graph(3))
        assert not is_isomorphic(left, right)
