"""
Graph file format.

    structure n=<int>
    rel <name> [color]
    <u> <v>
    ...
    <blank line>

Names are arbitrary byte strings written with percent-escapes (``%20`` for a
space). Lines starting with ``#`` are comments. The canonical serialization sorts
relations by name and pairs lexicographically, so parse/serialize is a
fixpoint after one round.
"""

import logging
import re
from pathlib import Path

from ..errors import StructureError, StructureParseError
from .models import Pair, Structure, name_from_text, name_text

logger = logging.getLogger(__name__)

HEADER = re.compile(r"^structure\s+n=(\d+)\s*$")
PAIR_LINE = re.compile(r"^(-?\d+)\s+(-?\d+)\s*$")


def parse_structure(text: str) -> Structure:
    """Parse graph-file content into a validated Structure"""
    lines = text.splitlines()
    line_no = 0
    while line_no < len(lines) and _skippable(lines[line_no]):
        line_no += 1
    if line_no == len(lines):
        raise StructureParseError("missing 'structure n=<int>' header", line=1)

    header = HEADER.match(lines[line_no].strip())
    if not header:
        raise StructureParseError("expected 'structure n=<int>' header", line=line_no + 1)
    n = int(header.group(1))
    line_no += 1

    relations: dict[bytes, list[Pair]] = {}
    colors: set[bytes] = set()
    current: bytes | None = None

    for offset, raw in enumerate(lines[line_no:], start=line_no + 1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            continue
        if not stripped:
            current = None
            continue
        if stripped.startswith("rel ") or stripped == "rel":
            current = _parse_relation_header(stripped, offset, relations, colors)
            continue
        if current is None:
            raise StructureParseError("pair line outside a relation block", line=offset)
        match = PAIR_LINE.match(stripped)
        if not match:
            raise StructureParseError(f"expected '<u> <v>', got {stripped!r}", line=offset)
        u, v = int(match.group(1)), int(match.group(2))
        for value, column in ((u, 1), (v, raw.find(match.group(2)) + 1)):
            if not 0 <= value < n:
                raise StructureParseError(f"vertex {value} out of range 0..{n - 1}", offset, column)
        relations[current].append((u, v))

    try:
        structure = Structure.create(n, relations, colors)
        structure.check_colour_partition()
    except StructureError as e:
        logger.error(f"Graph file rejected: {e.message}")
        raise StructureError(e.message, code="VALIDATION_ERROR") from e
    logger.debug(f"Parsed structure with {n} vertices and {len(relations)} relations")
    return structure


def _skippable(line: str) -> bool:
    stripped = line.strip()
    return not stripped or stripped.startswith("#")


def _parse_relation_header(
    stripped: str, line: int, relations: dict[bytes, list[Pair]], colors: set[bytes]
) -> bytes:
    parts = stripped.split()
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "color"):
        raise StructureParseError("expected 'rel <name> [color]'", line=line)
    name = name_from_text(parts[1])
    if name in relations:
        raise StructureParseError(f"duplicate relation name {parts[1]!r}", line=line, column=5)
    relations[name] = []
    if len(parts) == 3:
        colors.add(name)
    return name


def serialize_structure(structure: Structure) -> str:
    """Canonical text form: relations by name, pairs lexicographic"""
    out = [f"structure n={structure.universe_size}"]
    for name in structure.vocabulary:
        flag = " color" if name in structure.colors else ""
        out.append(f"rel {name_text(name)}{flag}")
        out.extend(f"{u} {v}" for u, v in sorted(structure.relations[name]))
        out.append("")
    return "\n".join(out) + "\n"


def load_structure(path: str | Path) -> Structure:
    """Read and parse a graph file"""
    return parse_structure(Path(path).read_text(encoding="utf-8"))


def save_structure(structure: Structure, path: str | Path) -> None:
    Path(path).write_text(serialize_structure(structure), encoding="utf-8")
