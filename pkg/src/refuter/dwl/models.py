"""
Deep Weisfeiler Leman data models.

Traces are the portable input of a run: a budget plus a list of pair/scc
operations naming stable colours by their canonical keys. Cloud states are
immutable snapshots of the union after each operation.

    dwltrace v1 budget_vertices=<int> budget_steps=<int>
    pair <canonical colour key>
    scc <canonical colour key>
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, NamedTuple, Optional, Union

from pydantic import BaseModel, Field

from ..coherent.history import ColorHistory
from ..coherent.sketch import AlgebraicSketch
from ..config import get_settings
from ..errors import DwlError
from ..structures.models import Side, UnionStructure


class OpKind(str, Enum):
    """The two cloud operations"""

    PAIR = "pair"
    SCC = "scc"


class Outcome(str, Enum):
    DISTINGUISHED = "DISTINGUISHED"
    NOT_DISTINGUISHED = "NOT_DISTINGUISHED"


class DwlOp(BaseModel):
    """One operation applied to the stable colour with canonical key ``colour``"""

    kind: OpKind
    colour: str = Field(min_length=1)

    def to_text(self) -> str:
        return f"{self.kind.value} {self.colour}"


class DwlTrace(BaseModel):
    """Operation sequence plus the resource budget it must respect"""

    ops: List[DwlOp] = Field(default_factory=list)
    budget_vertices: int = Field(default_factory=lambda: get_settings().budget_vertices, gt=0)
    budget_steps: int = Field(default_factory=lambda: get_settings().budget_steps, gt=0)

    def to_text(self) -> str:
        lines = [
            f"dwltrace v1 budget_vertices={self.budget_vertices} budget_steps={self.budget_steps}"
        ]
        lines.extend(op.to_text() for op in self.ops)
        return "\n".join(lines) + "\n"


TRACE_HEADER = re.compile(r"^dwltrace v1 budget_vertices=(\d+) budget_steps=(\d+)$")
TRACE_LINE = re.compile(r"^(pair|scc) (\S+)$")


def parse_trace(text: str) -> DwlTrace:
    """Parse the trace format; blank lines and ``#`` comments are skipped"""
    lines = [
        (number, raw.strip())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not lines:
        raise DwlError("empty trace file", code="PARSE_ERROR")
    number, first = lines[0]
    header = TRACE_HEADER.match(first)
    if not header:
        raise DwlError(
            f"line {number}: expected 'dwltrace v1 budget_vertices=<int> budget_steps=<int>'",
            code="PARSE_ERROR",
        )
    budget_vertices, budget_steps = int(header.group(1)), int(header.group(2))
    if budget_vertices < 1 or budget_steps < 1:
        raise DwlError(f"line {number}: budgets must be positive", code="PARSE_ERROR")

    ops = []
    for number, line in lines[1:]:
        match = TRACE_LINE.match(line)
        if not match:
            raise DwlError(f"line {number}: unrecognised operation {line[:40]!r}", code="PARSE_ERROR")
        ops.append(DwlOp(kind=OpKind(match.group(1)), colour=match.group(2)))
    return DwlTrace(ops=ops, budget_vertices=budget_vertices, budget_steps=budget_steps)


def load_trace(path: Union[str, Path]) -> DwlTrace:
    return parse_trace(Path(path).read_text(encoding="utf-8"))


def save_trace(trace: DwlTrace, path: Union[str, Path]) -> None:
    Path(path).write_text(trace.to_text(), encoding="utf-8")


class ProvenanceKind(str, Enum):
    ORIGINAL = "original"
    PAIR = "pair"
    SCC = "scc"


class Provenance(NamedTuple):
    """
    Where a vertex came from. ``sources`` are vertex numbers of the state the
    vertex was created from: the two endpoints of a pair or the SCC members.
    """

    kind: ProvenanceKind
    colour: Optional[str] = None
    sources: tuple[int, ...] = ()


@dataclass(frozen=True)
class CloudState:
    """
    The union in the cloud after ``step_count`` operations.

    ``carried[v]`` is the number of v in the previous state, or None for a
    vertex created by ``op``.
    """

    union: UnionStructure
    history: ColorHistory
    sketch_left: AlgebraicSketch
    sketch_right: AlgebraicSketch
    provenance: tuple[Provenance, ...]
    carried: tuple[Optional[int], ...]
    step_count: int = 0
    op: Optional[DwlOp] = None

    @property
    def sketches_equal(self) -> bool:
        return self.sketch_left.same_as(self.sketch_right)

    def created(self, side: Side) -> list[int]:
        """Vertices of one side created by the last operation"""
        return [v for v in self.union.side_vertices(side) if self.carried[v] is None]

    def survivors(self, side: Side) -> list[int]:
        return [v for v in self.union.side_vertices(side) if self.carried[v] is not None]


@dataclass
class TraceRun:
    """Every state of a run, the initial one first"""

    states: list[CloudState] = field(default_factory=list)
    outcome: Outcome = Outcome.NOT_DISTINGUISHED

    @property
    def final(self) -> CloudState:
        return self.states[-1]
