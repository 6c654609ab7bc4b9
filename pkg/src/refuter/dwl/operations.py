"""
The pair and scc cloud operations and the trace runner.

pair(R) adds one vertex per pair (u, v) of colour R, joined to u by E_left
and to v by E_right. scc(R) contracts every SCC of R to a single vertex that
inherits all relation pairs of its members. Both mark their new vertices
with a fresh diagonal relation D_R, recompute the stable colouring and
re-derive both side sketches.
"""

import logging
from typing import Optional

from ..coherent.history import refine
from ..coherent.scc import sccs_of_color
from ..coherent.sketch import restrict_sketch
from ..config import get_settings
from ..errors import DwlError
from ..structures.models import Pair, Side, Structure, UnionStructure
from ..structures.union import disjoint_union
from .models import (
    CloudState,
    DwlOp,
    DwlTrace,
    OpKind,
    Outcome,
    Provenance,
    ProvenanceKind,
    TraceRun,
)

logger = logging.getLogger(__name__)

E_LEFT = b"E_left"
E_RIGHT = b"E_right"


def fresh_relation_name(vocabulary: tuple[bytes, ...]) -> bytes:
    """Least binary string not yet used as a relation name"""
    used = set(vocabulary)
    length = 1
    while b"0" * length in used:
        length += 1
    return b"0" * length


def _settle(
    union: UnionStructure,
    provenance: list[Provenance],
    carried: list[Optional[int]],
    step_count: int,
    op: Optional[DwlOp],
    jobs: int,
) -> CloudState:
    union.require_connected_sides()
    history = refine(union, jobs=jobs)
    return CloudState(
        union=union,
        history=history,
        sketch_left=restrict_sketch(history, Side.LEFT),
        sketch_right=restrict_sketch(history, Side.RIGHT),
        provenance=tuple(provenance),
        carried=tuple(carried),
        step_count=step_count,
        op=op,
    )


def initial_state(left: Structure, right: Structure, *, jobs: Optional[int] = None) -> CloudState:
    """State 0: the union of the inputs with every vertex ORIGINAL"""
    union = disjoint_union(left, right)
    n = union.size
    return _settle(
        union,
        [Provenance(ProvenanceKind.ORIGINAL)] * n,
        list(range(n)),
        0,
        None,
        jobs or get_settings().jobs,
    )


def _resolve(state: CloudState, key: str) -> int:
    colour = state.history.colour_by_key(key)
    if colour is None:
        raise DwlError(f"no stable colour with key {key}", code="UNKNOWN_COLOR")
    if state.history.is_crossing(colour):
        raise DwlError(f"colour {key} consists of crossing pairs", code="NOT_NORMALISED")
    return colour


def _check_budget(state: CloudState, new_size: int, budget_vertices: int, budget_steps: int) -> None:
    if state.step_count + 1 > budget_steps:
        raise DwlError(f"operation {state.step_count + 1} exceeds {budget_steps} steps", code="BUDGET_EXCEEDED")
    if new_size > budget_vertices:
        raise DwlError(
            f"cloud would hold {new_size} vertices, budget is {budget_vertices}",
            code="BUDGET_EXCEEDED",
        )


def exec_pair(
    state: CloudState,
    key: str,
    *,
    budget_vertices: Optional[int] = None,
    budget_steps: Optional[int] = None,
    jobs: Optional[int] = None,
) -> CloudState:
    """Add a vertex for every pair of the stable colour ``key``"""
    settings = get_settings()
    colour = _resolve(state, key)
    union = state.union
    structure = union.structure
    members = state.history.pairs_of(colour)
    left_pairs = [p for p in members if union.side(p[0]) == Side.LEFT]
    right_pairs = [p for p in members if union.side(p[0]) == Side.RIGHT]
    left_size = union.left_size + len(left_pairs)
    right_size = union.right_size + len(right_pairs)
    _check_budget(
        state,
        left_size + right_size,
        budget_vertices or settings.budget_vertices,
        budget_steps or settings.budget_steps,
    )

    position = {v: v for v in union.left_vertices}
    position.update({w: w + len(left_pairs) for w in union.right_vertices})
    created: dict[Pair, int] = {p: union.left_size + i for i, p in enumerate(left_pairs)}
    created.update({p: left_size + union.right_size + i for i, p in enumerate(right_pairs)})

    relations = {
        name: [(position[u], position[v]) for u, v in pairs]
        for name, pairs in structure.relations.items()
    }
    d_r = fresh_relation_name(structure.vocabulary)
    relations.setdefault(E_LEFT, [])
    relations.setdefault(E_RIGHT, [])
    relations[d_r] = []
    for (u, v), x in created.items():
        relations[E_LEFT].append((position[u], x))
        relations[E_RIGHT].append((position[v], x))
        relations[d_r].append((x, x))

    size = left_size + right_size
    provenance: list[Optional[Provenance]] = [None] * size
    carried: list[Optional[int]] = [None] * size
    for old, new in position.items():
        provenance[new] = state.provenance[old]
        carried[new] = old
    for p, x in created.items():
        provenance[x] = Provenance(ProvenanceKind.PAIR, key, p)

    grown = Structure.create(size, relations, structure.colors | {d_r})
    next_state = _settle(
        UnionStructure(grown, left_size, right_size),
        provenance,
        carried,
        state.step_count + 1,
        DwlOp(kind=OpKind.PAIR, colour=key),
        jobs or settings.jobs,
    )
    logger.info(
        f"pair({key[:12]}) added {len(left_pairs)}+{len(right_pairs)} vertices; "
        f"cloud has {size} vertices and {next_state.history.colour_count()} colours"
    )
    return next_state


def exec_scc(
    state: CloudState,
    key: str,
    *,
    budget_vertices: Optional[int] = None,
    budget_steps: Optional[int] = None,
    jobs: Optional[int] = None,
) -> CloudState:
    """Contract every SCC of the stable colour ``key``"""
    settings = get_settings()
    colour = _resolve(state, key)
    union = state.union
    structure = union.structure
    components = sccs_of_color(state.history, colour)
    if not components:
        raise DwlError(f"colour {key} has no strongly connected components", code="NO_SCCS")
    member = {v for component in components for v in component}

    order: list[int] = []
    blocks: list[tuple[int, ...]] = []
    sizes = []
    for side in (Side.LEFT, Side.RIGHT):
        kept = [v for v in union.side_vertices(side) if v not in member]
        contracted = [c for c in components if union.side(c[0]) == side]
        order.extend(kept)
        blocks.extend((v,) for v in kept)
        blocks.extend(contracted)
        sizes.append(len(kept) + len(contracted))
    _check_budget(
        state,
        sum(sizes),
        budget_vertices or settings.budget_vertices,
        budget_steps or settings.budget_steps,
    )

    target = {v: index for index, block in enumerate(blocks) for v in block}
    relations = {
        name: {(target[u], target[v]) for u, v in pairs} for name, pairs in structure.relations.items()
    }
    d_r = fresh_relation_name(structure.vocabulary)
    survivors = set(order)
    provenance = []
    carried: list[Optional[int]] = []
    diagonal = []
    for index, block in enumerate(blocks):
        if block[0] in survivors:
            provenance.append(state.provenance[block[0]])
            carried.append(block[0])
        else:
            provenance.append(Provenance(ProvenanceKind.SCC, key, block))
            carried.append(None)
            diagonal.append((index, index))
    relations[d_r] = set(diagonal)

    contracted = Structure.create(len(blocks), relations, structure.colors | {d_r})
    next_state = _settle(
        UnionStructure(contracted, sizes[0], sizes[1]),
        provenance,
        carried,
        state.step_count + 1,
        DwlOp(kind=OpKind.SCC, colour=key),
        jobs or settings.jobs,
    )
    logger.info(
        f"scc({key[:12]}) contracted {len(components)} components; "
        f"cloud has {len(blocks)} vertices"
    )
    return next_state


def apply_op(state: CloudState, op: DwlOp, trace: DwlTrace, jobs: Optional[int] = None) -> CloudState:
    runner = exec_pair if op.kind == OpKind.PAIR else exec_scc
    return runner(
        state,
        op.colour,
        budget_vertices=trace.budget_vertices,
        budget_steps=trace.budget_steps,
        jobs=jobs,
    )


def run_trace(left: Structure, right: Structure, trace: DwlTrace, *, jobs: Optional[int] = None) -> TraceRun:
    """
    Execute a trace, stopping at the first state whose side sketches differ.
    """
    state = initial_state(left, right, jobs=jobs)
    if state.union.size > trace.budget_vertices:
        raise DwlError(
            f"input union has {state.union.size} vertices, budget is {trace.budget_vertices}",
            code="BUDGET_EXCEEDED",
        )
    run = TraceRun(states=[state])
    if not state.sketches_equal:
        run.outcome = Outcome.DISTINGUISHED
        logger.info("Sides are distinguished before any operation")
        return run

    for op in trace.ops:
        state = apply_op(state, op, trace, jobs)
        run.states.append(state)
        if not state.sketches_equal:
            run.outcome = Outcome.DISTINGUISHED
            logger.info(f"Sides distinguished after {state.step_count} operations")
            break
    else:
        logger.info(f"Trace of {len(trace.ops)} operations ends with equal sketches")
    return run
