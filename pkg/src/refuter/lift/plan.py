"""
Extension plans for one DWL operation.

Every new pair (v, w) of the next state gets an extension variable defined
over the previous state's variables: the product X_{v1w1}·X_{v2w2} of the
parent pairs for pair(R), and the average of X_{v'w'} over scc(v) × scc(w)
for scc(R).
"""

import logging
from collections import Counter
from dataclasses import dataclass, field

from ..derive.system import AxiomSystem
from ..dwl.models import CloudState, OpKind, ProvenanceKind
from ..errors import LiftError
from ..polysys.extension import ExtensionDescriptor, pair_extension, scc_extension
from ..polysys.variables import VariableId
from ..structures.models import Pair, Side

logger = logging.getLogger(__name__)


@dataclass
class LiftPlan:
    """
    Descriptors for the new pairs of one operation.

    Pebbles in ``descriptors`` use next-state vertex numbers; ``constituents``
    lists the previous-state pebbles each definition is built from.
    """

    op: OpKind
    colour: str
    new_left: list[int]
    new_right: list[int]
    descriptors: dict[Pair, ExtensionDescriptor] = field(default_factory=dict)
    constituents: dict[Pair, tuple[Pair, ...]] = field(default_factory=dict)
    renaming: dict[VariableId, VariableId] = field(default_factory=dict)

    @property
    def extension_count(self) -> int:
        return len(self.descriptors)


def _require_equal_colour_counts(prev: CloudState) -> None:
    structure = prev.union.structure
    left = Counter(structure.colour_of[v] for v in prev.union.left_vertices)
    right = Counter(structure.colour_of[w] for w in prev.union.right_vertices)
    if left != right:
        raise LiftError("vertex colour counts differ between the sides", code="COLOR_COUNT_MISMATCH")


def plan(prev: CloudState, next_state: CloudState, system: AxiomSystem) -> LiftPlan:
    """Extension descriptors for every same-colour new pair of ``next_state``"""
    if next_state.op is None:
        raise LiftError("the next state was not produced by an operation")
    _require_equal_colour_counts(prev)
    structure = next_state.union.structure
    lift_plan = LiftPlan(
        op=next_state.op.kind,
        colour=next_state.op.colour,
        new_left=next_state.created(Side.LEFT),
        new_right=next_state.created(Side.RIGHT),
    )

    def var(pebble: Pair) -> VariableId:
        if pebble not in system.variables:
            raise LiftError(f"constituent {pebble} of a new pair has no variable")
        return system.var(pebble)

    for v in lift_plan.new_left:
        source_v = next_state.provenance[v]
        for w in lift_plan.new_right:
            if not structure.same_colour(v, w):
                continue
            source_w = next_state.provenance[w]
            if source_v.kind != source_w.kind:
                raise LiftError(f"new vertices {v} and {w} come from different operations")
            if source_v.kind == ProvenanceKind.PAIR:
                (v1, v2), (w1, w2) = source_v.sources, source_w.sources
                parts = ((v1, w1), (v2, w2))
                descriptor = pair_extension(var(parts[0]), var(parts[1]))
            else:
                n = len(source_v.sources)
                if len(source_w.sources) != n:
                    raise LiftError(
                        f"contracted components of {v} and {w} have sizes {n} and {len(source_w.sources)}"
                    )
                parts = tuple((x, y) for x in source_v.sources for y in source_w.sources)
                descriptor = scc_extension([var(p) for p in parts], n)
            lift_plan.descriptors[(v, w)] = descriptor
            lift_plan.constituents[(v, w)] = parts

    bound = next_state.union.left_size ** 2
    if lift_plan.extension_count > bound:
        raise LiftError(f"{lift_plan.extension_count} extension variables exceed |V(G')|² = {bound}")
    logger.debug(
        f"{lift_plan.op.value} plan: {len(lift_plan.new_left)}x{len(lift_plan.new_right)} new vertices, "
        f"{lift_plan.extension_count} extension variables"
    )
    return lift_plan
