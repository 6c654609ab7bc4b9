"""
Brute-force validation of coherent configurations.

Every check recounts on the structure itself rather than trusting the
refinement: the four coherence clauses, the endpoint-colour facts, and
the SCC facts for every colour with at least one SCC. ``validate_layers``
checks the union-only statements on every refinement layer.
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..structures.models import Structure
from .history import ColorHistory
from .scc import components_of

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    """Outcome of one validation check"""

    name: str
    passed: bool
    counterexample: Optional[List[int]] = None
    detail: str = ""


class ValidationReport(BaseModel):
    """All checks run on one colouring"""

    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_text(self) -> str:
        lines = []
        for check in self.checks:
            status = "PASS" if check.passed else "FAIL"
            line = f"{status} {check.name}"
            if check.counterexample is not None:
                line += f" counterexample={check.counterexample}"
            if check.detail:
                line += f" ({check.detail})"
            lines.append(line)
        return "\n".join(lines) + "\n"


def _first_disagreement(
    colouring: np.ndarray, values: np.ndarray
) -> Optional[tuple[int, int, int, int]]:
    """First pair whose value differs from the least pair of its class"""
    n = colouring.shape[0]
    _, first, inverse = np.unique(colouring.reshape(-1), return_index=True, return_inverse=True)
    representative = first[inverse.reshape(-1)]
    mismatch = np.flatnonzero(values.reshape(-1) != values.reshape(-1)[representative])
    if mismatch.size == 0:
        return None
    u, v = divmod(int(mismatch[0]), n)
    ru, rv = divmod(int(representative[mismatch[0]]), n)
    return ru, rv, u, v


def _constant_check(name: str, colouring: np.ndarray, values: np.ndarray, detail: str) -> CheckResult:
    found = _first_disagreement(colouring, values)
    if found is None:
        return CheckResult(name=name, passed=True)
    return CheckResult(name=name, passed=False, counterexample=list(found), detail=detail)


def _check_partition(colouring: np.ndarray) -> CheckResult:
    n = colouring.shape[0]
    if colouring.shape != (n, n):
        return CheckResult(name="partition", passed=False, detail="colouring is not square")
    used = np.unique(colouring)
    missing = sorted(set(range(int(used.max()) + 1)) - set(used.tolist()))
    if used.min() < 0 or missing:
        return CheckResult(
            name="partition",
            passed=False,
            counterexample=missing[:1] or [int(used.min())],
            detail="colour ids must be dense and non-negative",
        )
    return CheckResult(name="partition", passed=True)


def _check_intersections(colouring: np.ndarray) -> CheckResult:
    n = colouring.shape[0]
    k = int(colouring.max()) + 1
    flat = colouring.reshape(-1)
    _, first = np.unique(flat, return_index=True)
    for colour, index in enumerate(first.tolist()):
        ru, rv = divmod(index, n)
        expected = np.bincount(colouring[ru, :] * k + colouring[:, rv], minlength=k * k)
        for pair in np.flatnonzero(flat == colour).tolist():
            u, v = divmod(pair, n)
            counts = np.bincount(colouring[u, :] * k + colouring[:, v], minlength=k * k)
            differs = np.flatnonzero(counts != expected)
            if differs.size:
                code = int(differs[0])
                return CheckResult(
                    name="intersection_numbers",
                    passed=False,
                    counterexample=[code // k, code % k, colour],
                    detail=f"pairs ({ru},{rv}) and ({u},{v}) count {int(expected[code])} vs {int(counts[code])}",
                )
    return CheckResult(name="intersection_numbers", passed=True)


def _scc_checks(structure: Structure, colouring: np.ndarray) -> list[CheckResult]:
    n = colouring.shape[0]
    k = int(colouring.max()) + 1
    diagonal = np.diag(colouring)
    failures: dict[str, CheckResult] = {}

    def fail(name: str, counterexample: list[int], detail: str) -> None:
        failures.setdefault(
            name, CheckResult(name=name, passed=False, counterexample=counterexample, detail=detail)
        )

    for colour in range(k):
        us, vs = np.nonzero(colouring == colour)
        components = components_of(zip(us.tolist(), vs.tolist()))
        if not components:
            continue
        members = sorted(v for component in components for v in component)
        owner = {v: i for i, component in enumerate(components) for v in component}

        member_colours = {int(diagonal[v]) for v in members}
        if len(member_colours) != 1:
            fail("scc_single_colour", [colour], "SCC vertices carry several diagonal colours")
        else:
            (fibre,) = member_colours
            if sorted(np.flatnonzero(diagonal == fibre).tolist()) != members:
                fail("scc_single_colour", [colour, fibre], "diagonal colour extends beyond the SCCs")

        if len({len(component) for component in components}) != 1:
            fail("scc_equal_size", [colour], "SCC sizes differ")

        inside = {(a, b) for component in components for a in component for b in component}
        inside_colours = {int(colouring[a, b]) for a, b in inside}
        for t in sorted(inside_colours):
            ts, tv = np.nonzero(colouring == t)
            stray = next(((a, b) for a, b in zip(ts.tolist(), tv.tolist()) if (a, b) not in inside), None)
            if stray is not None:
                fail("scc_colour_union", [colour, t, *stray], "colour meets SCC blocks and their complement")
                break

        for name in structure.vocabulary:
            relation = structure.relations[name]
            seen: dict[int, tuple[bool, bool]] = {}
            for x in range(n):
                for z in members:
                    block = components[owner[z]]
                    flags = (
                        any((x, w) in relation for w in block),
                        any((w, x) in relation for w in block),
                    )
                    t = int(colouring[x, z])
                    if seen.setdefault(t, flags) != flags:
                        fail("scc_between_vertex", [colour, t, x, z], f"relation {name.decode()}")
            seen_blocks: dict[int, bool] = {}
            for a in members:
                for z in members:
                    linked = any(
                        (p, q) in relation for p in components[owner[a]] for q in components[owner[z]]
                    )
                    t = int(colouring[a, z])
                    if seen_blocks.setdefault(t, linked) != linked:
                        fail("scc_between_components", [colour, t, a, z], f"relation {name.decode()}")

    names = [
        "scc_single_colour",
        "scc_equal_size",
        "scc_colour_union",
        "scc_between_vertex",
        "scc_between_components",
    ]
    return [failures.get(name, CheckResult(name=name, passed=True)) for name in names]


def validate_configuration(h: ColorHistory, colouring: Optional[np.ndarray] = None) -> ValidationReport:
    """
    Check the stable layer of ``h`` (or a replacement colouring of the same
    structure) against every check.
    """
    structure = h.structure
    colouring = h.stable if colouring is None else np.asarray(colouring, dtype=np.int64)
    report = ValidationReport()
    partition = _check_partition(colouring)
    report.checks.append(partition)
    if not partition.passed:
        return report

    n = colouring.shape[0]
    is_loop = np.eye(n, dtype=bool)
    report.checks.append(
        _constant_check("diagonal_separation", colouring, is_loop, "colour mixes loops and non-loops")
    )
    report.checks.append(
        _constant_check("converse_closure", colouring, colouring.T, "converse pairs change colour")
    )
    report.checks.append(_check_intersections(colouring))
    report.checks.append(
        _constant_check(
            "refines_structure", colouring, structure.atomic_types.ids, "colour splits a relation"
        )
    )
    diagonal = np.diag(colouring)
    endpoints = diagonal[:, None] * (int(diagonal.max()) + 1) + diagonal[None, :]
    report.checks.append(
        _constant_check("endpoint_colours", colouring, endpoints, "endpoint diagonal colours vary")
    )
    loops = np.diag(structure.atomic_types.ids)
    loop_types = loops[:, None] * (int(loops.max()) + 1) + loops[None, :]
    report.checks.append(
        _constant_check("endpoint_relations", colouring, loop_types, "endpoint loop relations vary")
    )
    report.checks.extend(_scc_checks(structure, colouring))

    for failure in report.failures():
        logger.warning(f"Validation check {failure.name} failed: {failure.counterexample}")
    return report


def validate_layers(h: ColorHistory) -> ValidationReport:
    """
    Union statements on every layer: crossing and side-internal pairs never
    share a colour, endpoint diagonal colours are constant per colour, and a
    crossing colour is determined by its endpoint diagonal colours.
    """
    report = ValidationReport()
    if h.union is None:
        return report
    crossing = h.union.side_mask[:, None] != h.union.side_mask[None, :]
    results: dict[str, CheckResult] = {}
    for index, layer in enumerate(h.layers):
        diagonal = np.diag(layer)
        endpoints = diagonal[:, None] * (int(diagonal.max()) + 1) + diagonal[None, :]
        for name, found in (
            ("crossing_separation", _first_disagreement(layer, crossing)),
            ("layer_endpoint_colours", _first_disagreement(layer, endpoints)),
        ):
            if found is not None and name not in results:
                results[name] = CheckResult(
                    name=name, passed=False, counterexample=[index, *found], detail=f"layer {index}"
                )
        cross_endpoints = np.where(crossing, endpoints, -1)
        determined = _first_disagreement(cross_endpoints, np.where(crossing, layer, -1))
        if determined is not None and "crossing_determined" not in results:
            results["crossing_determined"] = CheckResult(
                name="crossing_determined",
                passed=False,
                counterexample=[index, *determined],
                detail=f"layer {index}",
            )
    for name in ("crossing_separation", "layer_endpoint_colours", "crossing_determined"):
        report.checks.append(results.get(name, CheckResult(name=name, passed=True)))
    return report
