"""
The isomorphism axiom system of a union G ⊎ H.

Variables X_vw exist for LEFT v and RIGHT w of the same vertex colour. The
system has one ROW axiom Σ_v X_vw − 1 per RIGHT vertex w, one COL axiom
Σ_w X_vw − 1 per LEFT vertex v, and one LOCAL monomial X_vw·X_v'w' for every
pair of variables whose pebbles do not form a local isomorphism (the square
X_vw² included). Axioms are ordered ROW by w, then COL by v, then LOCAL by
their sorted pebble pairs.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Union

import numpy as np

from ..structures.models import Pair, UnionStructure
from .polynomial import Polynomial
from .variables import VariableId

logger = logging.getLogger(__name__)


class AxiomKind(IntEnum):
    ROW = 1
    COL = 2
    LOCAL = 3


@dataclass(frozen=True, slots=True)
class Axiom:
    """One axiom: ROW anchored at w, COL at v, LOCAL at its two pebbles"""

    kind: AxiomKind
    anchor: tuple[Union[int, Pair], ...]
    polynomial: Polynomial

    def line(self) -> str:
        return f"{self.kind.name.lower()} :: {self.polynomial.to_text()}"


@dataclass
class IsoAxioms:
    """Axioms plus lookups by anchor; pebbles use global vertex numbers"""

    union: UnionStructure
    variables: dict[Pair, VariableId]
    axioms: list[Axiom] = field(default_factory=list)
    row_index: dict[int, int] = field(default_factory=dict)
    col_index: dict[int, int] = field(default_factory=dict)
    local_index: dict[frozenset[Pair], int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.axioms)

    def polynomials(self) -> list[Polynomial]:
        return [axiom.polynomial for axiom in self.axioms]

    def canonical_lines(self) -> list[str]:
        return [axiom.line() for axiom in self.axioms]

    def counts(self) -> dict[str, int]:
        return dict(Counter(axiom.kind.name for axiom in self.axioms))


def is_local_isomorphism(atomic_types: np.ndarray, pebbles: Iterable[Pair]) -> bool:
    """
    True when v ↦ w over the pebbles is a well-defined injective map
    preserving every relation between (and on) pebbled vertices.
    """
    placed = list(pebbles)
    for v, w in placed:
        for v2, w2 in placed:
            if (v == v2) != (w == w2) or atomic_types[v, v2] != atomic_types[w, w2]:
                return False
    return True


def piso(gh: UnionStructure) -> IsoAxioms:
    """Generate the ROW, COL and LOCAL axioms of a union"""
    structure = gh.structure
    shift = gh.left_size
    variables = {
        (v, w): VariableId.orig(v, w - shift)
        for v in gh.left_vertices
        for w in gh.right_vertices
        if structure.same_colour(v, w)
    }
    system = IsoAxioms(union=gh, variables=variables)

    left_counts = Counter(structure.colour_of[v] for v in gh.left_vertices)
    right_counts = Counter(structure.colour_of[w] for w in gh.right_vertices)
    if left_counts != right_counts:
        message = "COLOR_COUNT_MISMATCH: vertex colour counts differ between the sides"
        logger.warning(message)
        system.warnings.append(message)

    def add(axiom: Axiom) -> int:
        system.axioms.append(axiom)
        return len(system.axioms) - 1

    for w in gh.right_vertices:
        row = [variables[(v, w)] for v in gh.left_vertices if (v, w) in variables]
        system.row_index[w] = add(Axiom(AxiomKind.ROW, (w,), Polynomial.linear(row, 1, -1)))
    for v in gh.left_vertices:
        col = [variables[(v, w)] for w in gh.right_vertices if (v, w) in variables]
        system.col_index[v] = add(Axiom(AxiomKind.COL, (v,), Polynomial.linear(col, 1, -1)))

    atomic_types = structure.atomic_types.ids
    pairs = sorted(variables)
    for i, first in enumerate(pairs):
        for second in pairs[i:]:
            if is_local_isomorphism(atomic_types, (first, second)):
                continue
            monomial = Polynomial.monomial((variables[first], variables[second]))
            system.local_index[frozenset((first, second))] = add(
                Axiom(AxiomKind.LOCAL, (first, second), monomial)
            )

    logger.debug(
        f"Generated {len(system.row_index)} ROW, {len(system.col_index)} COL and "
        f"{len(system.local_index)} LOCAL axioms over {len(variables)} variables"
    )
    return system
