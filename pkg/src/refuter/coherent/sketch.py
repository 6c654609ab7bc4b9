"""
Algebraic sketches of stable colourings.

A sketch lists the vocabulary, every stable colour with its diagonal flag
and the relations it refines, and the nonzero intersection numbers
q(R1, R2, R3): the number of x with (u,x) in R1 and (x,v) in R2 for any
(u,v) in R3. Colour ids are ranks of canonical keys. The text form is the
identity used for sketch comparison:

    color <id> diag=<0|1> refines=<names>
    q <r1> <r2> <r3> <count>
"""

import logging
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..errors import ConfigurationError
from ..structures.models import AtomicTypes, Side, name_text
from .history import ColorHistory

logger = logging.getLogger(__name__)


class SketchColour(BaseModel):
    """One stable colour of a sketch"""

    id: int
    diagonal: bool
    refines: List[str] = Field(default_factory=list)


class AlgebraicSketch(BaseModel):
    """Vocabulary, stable colours, refinement relation and intersection numbers"""

    tau: List[str]
    colours: List[SketchColour]
    q: List[Tuple[int, int, int, int]] = Field(
        default_factory=list, description="Sorted (r1, r2, r3, count) with count > 0"
    )

    def intersection(self, r1: int, r2: int, r3: int) -> int:
        for a, b, c, count in self.q:
            if (a, b, c) == (r1, r2, r3):
                return count
        return 0

    def to_text(self) -> str:
        lines = [
            f"color {colour.id} diag={int(colour.diagonal)} refines={','.join(colour.refines)}"
            for colour in self.colours
        ]
        lines.extend(f"q {a} {b} {c} {count}" for a, b, c, count in self.q)
        return "\n".join(lines) + "\n"

    def same_as(self, other: "AlgebraicSketch") -> bool:
        return self.tau == other.tau and self.to_text() == other.to_text()

    def renamed(self, mapping: Dict[int, int]) -> "AlgebraicSketch":
        """The same sketch with colour ids replaced through a bijection"""
        if sorted(mapping) != sorted(mapping.values()) or sorted(mapping) != [c.id for c in self.colours]:
            raise ConfigurationError("sketch renaming must be a permutation of the colour ids")
        colours = sorted(
            (colour.model_copy(update={"id": mapping[colour.id]}) for colour in self.colours),
            key=lambda colour: colour.id,
        )
        q = sorted((mapping[a], mapping[b], mapping[c], count) for a, b, c, count in self.q)
        return AlgebraicSketch(tau=list(self.tau), colours=colours, q=q)


def _build(colouring: np.ndarray, pairs: np.ndarray, types: AtomicTypes, tau: List[str]) -> AlgebraicSketch:
    """
    Sketch of a colouring with ids 0..k-1 over a square block of vertices.

    ``pairs[i, j]`` is the (u, v) of the structure behind block entry (i, j).
    """
    k = int(colouring.max()) + 1
    size = colouring.shape[0]
    _, first = np.unique(colouring.reshape(-1), return_index=True)
    colours = []
    q = []
    for colour, index in enumerate(first.tolist()):
        i, j = divmod(index, size)
        u, v = pairs[i, j]
        colours.append(
            SketchColour(
                id=colour,
                diagonal=i == j,
                refines=[name_text(name) for name in types.names[types.ids[u, v]]],
            )
        )
        counts = np.bincount(colouring[i, :] * k + colouring[:, j], minlength=k * k)
        for code in np.flatnonzero(counts).tolist():
            q.append((code // k, code % k, colour, int(counts[code])))
    q.sort()
    return AlgebraicSketch(tau=tau, colours=colours, q=q)


def _pairs(vertices: np.ndarray) -> np.ndarray:
    return np.stack(np.meshgrid(vertices, vertices, indexing="ij"), axis=-1)


def sketch(h: ColorHistory) -> AlgebraicSketch:
    """Canonical sketch of the stable layer of ``h``"""
    vertices = np.arange(h.size)
    tau = [name_text(name) for name in h.structure.vocabulary]
    return _build(h.stable, _pairs(vertices), h.structure.atomic_types, tau)


def restrict_sketch(h: ColorHistory, side: Side) -> AlgebraicSketch:
    """
    Sketch of one side read off the union's stable colouring.

    The colours realised inside the side are renumbered in the order of
    their union keys and intersection numbers count middle vertices of that
    side only. Both sides of a union are renamed the same way, so their
    sketches compare directly.
    """
    if h.union is None:
        raise ConfigurationError("restrict_sketch needs the history of a union")
    vertices = np.array(h.union.side_vertices(side))
    block = h.stable[np.ix_(vertices, vertices)]
    present = np.unique(block)
    local = np.searchsorted(present, block)
    logger.debug(f"{side.value} side realises {len(present)} of {h.colour_count()} union colours")
    tau = [name_text(name) for name in h.structure.vocabulary]
    return _build(local, _pairs(vertices), h.structure.atomic_types, tau)
