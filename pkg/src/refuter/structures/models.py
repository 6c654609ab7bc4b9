"""
Binary relational structures and disjoint unions with side tracking.

Vertices are dense indices 0..n-1. Relation names are byte strings compared
bytewise; vertex colours are diagonal relations flagged in ``colors``. A
vertex's colour is the set of colour relations containing its loop, so a
structure without colour relations is monochromatic.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence
from urllib.parse import quote_from_bytes, unquote_to_bytes

import networkx as nx
import numpy as np

from ..errors import StructureError

logger = logging.getLogger(__name__)

Pair = tuple[int, int]

# Kept literal in text forms; every other byte is percent-escaped
NAME_SAFE = "<>=+"


class Side(str, Enum):
    """Side of a vertex in a disjoint union"""

    LEFT = "left"
    RIGHT = "right"


class AtomicTypes(NamedTuple):
    """Per-pair atomic type ids plus the relation names behind each id"""

    ids: np.ndarray
    names: tuple[tuple[bytes, ...], ...]


def name_text(name: bytes) -> str:
    """Render a relation name for text formats and colour keys"""
    return quote_from_bytes(name, safe=NAME_SAFE)


def name_from_text(text: str) -> bytes:
    return unquote_to_bytes(text)


@dataclass(frozen=True)
class Structure:
    """
    Finite structure with named binary relations.

    Use ``Structure.create`` to build one from arbitrary iterables; it sorts
    the vocabulary and freezes the relations.
    """

    universe_size: int
    vocabulary: tuple[bytes, ...]
    relations: Mapping[bytes, frozenset[Pair]]
    colors: frozenset[bytes] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.universe_size < 1:
            raise StructureError("universe must contain at least one vertex")
        if len(set(self.vocabulary)) != len(self.vocabulary):
            raise StructureError("relation names must be unique within the vocabulary")
        if list(self.vocabulary) != sorted(self.vocabulary):
            raise StructureError("vocabulary must be sorted bytewise")
        if set(self.relations) != set(self.vocabulary):
            raise StructureError("relations must be given for exactly the vocabulary")
        for name in self.vocabulary:
            if not isinstance(name, bytes) or not name:
                raise StructureError(f"relation names are non-empty byte strings, got {name!r}")
        n = self.universe_size
        for name, pairs in self.relations.items():
            for u, v in pairs:
                if not (0 <= u < n and 0 <= v < n):
                    raise StructureError(
                        f"pair ({u},{v}) of relation {name_text(name)} outside universe of size {n}"
                    )
        for name in self.colors:
            if name not in self.relations:
                raise StructureError(f"colour relation {name!r} not in vocabulary")
            if any(u != v for u, v in self.relations[name]):
                raise StructureError(f"colour relation {name_text(name)} is not diagonal")

    @classmethod
    def create(
        cls,
        universe_size: int,
        relations: Mapping[bytes, Iterable[Pair]],
        colors: Iterable[bytes] = (),
    ) -> "Structure":
        """Build a structure, sorting the vocabulary and freezing pair sets"""
        frozen = {
            name: frozenset((int(u), int(v)) for u, v in pairs) for name, pairs in relations.items()
        }
        return cls(
            universe_size=universe_size,
            vocabulary=tuple(sorted(frozen)),
            relations=frozen,
            colors=frozenset(colors),
        )

    @property
    def vertices(self) -> range:
        return range(self.universe_size)

    def relation(self, name: bytes) -> frozenset[Pair]:
        """Pairs of one relation"""
        return self.relations[name]

    def vertex_colour(self, v: int) -> frozenset[bytes]:
        """Colour relations whose diagonal contains v"""
        return frozenset(name for name in self.colors if (v, v) in self.relations[name])

    @cached_property
    def colour_of(self) -> tuple[frozenset[bytes], ...]:
        return tuple(self.vertex_colour(v) for v in self.vertices)

    def same_colour(self, v: int, w: int) -> bool:
        return self.colour_of[v] == self.colour_of[w]

    def check_colour_partition(self) -> None:
        """Require every vertex in exactly one colour relation when colours are present"""
        if not self.colors:
            return
        for v in self.vertices:
            count = len(self.colour_of[v])
            if count != 1:
                raise StructureError(
                    f"vertex {v} lies in {count} colour relations; "
                    "colour relations must partition the diagonal"
                )

    @cached_property
    def atomic_types(self) -> AtomicTypes:
        """Relation membership type of every ordered pair, as dense ids"""
        n = self.universe_size
        width = max(len(self.vocabulary), 1)
        membership = np.zeros((n, n, width), dtype=np.int8)
        for index, name in enumerate(self.vocabulary):
            pairs = self.relations[name]
            if pairs:
                us, vs = zip(*pairs)
                membership[list(us), list(vs), index] = 1
        rows, inverse = np.unique(
            membership.reshape(n * n, width), axis=0, return_inverse=True
        )
        names = tuple(
            tuple(self.vocabulary[i] for i in range(len(self.vocabulary)) if row[i])
            for row in rows
        )
        return AtomicTypes(ids=inverse.reshape(n, n).astype(np.int64), names=names)

    def connectivity_graph(self) -> nx.Graph:
        """Undirected graph over the union of all relations and their converses"""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for pairs in self.relations.values():
            graph.add_edges_from((u, v) for u, v in pairs if u != v)
        return graph

    def is_connected(self) -> bool:
        return bool(nx.is_connected(self.connectivity_graph()))

    def induced(self, vertices: Sequence[int]) -> "Structure":
        """Substructure on ``vertices``, renumbered in the given order"""
        index = {v: i for i, v in enumerate(vertices)}
        relations = {
            name: [(index[u], index[v]) for u, v in pairs if u in index and v in index]
            for name, pairs in self.relations.items()
        }
        return Structure.create(len(vertices), relations, self.colors)

    def relabel(self, permutation: Sequence[int]) -> "Structure":
        """Isomorphic copy in which vertex v becomes permutation[v]"""
        if sorted(permutation) != list(self.vertices):
            raise StructureError("relabelling must be a permutation of the universe")
        relations = {
            name: [(permutation[u], permutation[v]) for u, v in pairs]
            for name, pairs in self.relations.items()
        }
        return Structure.create(self.universe_size, relations, self.colors)

    def pair_count(self) -> int:
        return sum(len(pairs) for pairs in self.relations.values())


@dataclass(frozen=True)
class UnionStructure:
    """
    Disjoint union G ⊎ H: LEFT vertices come first, RIGHT vertices follow.
    """

    structure: Structure
    left_size: int
    right_size: int

    def __post_init__(self) -> None:
        if self.left_size < 1 or self.right_size < 1:
            raise StructureError("both sides of a union need at least one vertex")
        if self.left_size + self.right_size != self.structure.universe_size:
            raise StructureError("side sizes must add up to the universe size")
        for name, pairs in self.structure.relations.items():
            for u, v in pairs:
                if (u < self.left_size) != (v < self.left_size):
                    raise StructureError(
                        f"relation {name_text(name)} has crossing pair ({u},{v})"
                    )

    @property
    def size(self) -> int:
        return self.structure.universe_size

    @property
    def left_vertices(self) -> range:
        return range(self.left_size)

    @property
    def right_vertices(self) -> range:
        return range(self.left_size, self.size)

    def side(self, v: int) -> Side:
        return Side.LEFT if v < self.left_size else Side.RIGHT

    def is_crossing(self, u: int, v: int) -> bool:
        return (u < self.left_size) != (v < self.left_size)

    def local_index(self, v: int) -> int:
        """Index of v inside its own side"""
        return v if v < self.left_size else v - self.left_size

    def side_vertices(self, side: Side) -> range:
        return self.left_vertices if side == Side.LEFT else self.right_vertices

    def side_structure(self, side: Side) -> Structure:
        """The structure induced on one side, renumbered from 0"""
        return self.structure.induced(list(self.side_vertices(side)))

    @cached_property
    def side_mask(self) -> np.ndarray:
        """Boolean vector, True on LEFT vertices"""
        mask = np.zeros(self.size, dtype=bool)
        mask[: self.left_size] = True
        return mask

    def require_connected_sides(self) -> None:
        """Raise NOT_CONNECTED naming the first disconnected side"""
        for side in (Side.LEFT, Side.RIGHT):
            if not self.side_structure(side).is_connected():
                raise StructureError(f"{side.value} side is not connected", code="NOT_CONNECTED")
