"""
An axiom system as seen from inside a proof.

The base system of a run loads its ROW/COL/LOCAL axioms into the builder as
AXIOM steps on first use. A lifted system already has every axiom derived
as a proof step and only records where each one lives.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..polysys.piso import IsoAxioms
from ..polysys.variables import VariableId
from ..prooflog.builder import ProofBuilder
from ..structures.models import Pair, UnionStructure


@dataclass
class AxiomSystem:
    """
    Proof-side view of P_iso for one union. ``variables`` maps a global
    (LEFT v, RIGHT w) pebble to the proof variable standing for X_vw.
    """

    union: UnionStructure
    builder: ProofBuilder
    variables: dict[Pair, VariableId]
    rows: dict[int, int] = field(default_factory=dict)
    cols: dict[int, int] = field(default_factory=dict)
    locals: dict[frozenset[Pair], int] = field(default_factory=dict)
    loader: Optional[Callable[[str, object], Optional[int]]] = None

    @classmethod
    def from_axioms(cls, axioms: IsoAxioms, builder: ProofBuilder) -> "AxiomSystem":
        """Base system whose axioms become AXIOM steps lazily"""

        def load(kind: str, anchor: object) -> Optional[int]:
            index = {
                "row": axioms.row_index,
                "col": axioms.col_index,
                "local": axioms.local_index,
            }[kind].get(anchor)
            return None if index is None else builder.axiom(index)

        return cls(
            union=axioms.union,
            builder=builder,
            variables=dict(axioms.variables),
            loader=load,
        )

    def var(self, pebble: Pair) -> VariableId:
        return self.variables[pebble]

    def has_var(self, pebble: Pair) -> bool:
        return pebble in self.variables

    def _lookup(self, table: dict, kind: str, anchor: object) -> Optional[int]:
        if anchor not in table and self.loader is not None:
            step = self.loader(kind, anchor)
            if step is not None:
                table[anchor] = step
        return table.get(anchor)

    def row(self, w: int) -> int:
        step = self._lookup(self.rows, "row", w)
        if step is None:
            raise KeyError(f"no ROW axiom for vertex {w}")
        return step

    def col(self, v: int) -> int:
        step = self._lookup(self.cols, "col", v)
        if step is None:
            raise KeyError(f"no COL axiom for vertex {v}")
        return step

    def local(self, first: Pair, second: Pair) -> Optional[int]:
        """LOCAL axiom step for two pebbles, or None when they form a local isomorphism"""
        return self._lookup(self.locals, "local", frozenset((first, second)))
