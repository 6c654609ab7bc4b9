"""
End-to-end refutation driver.

Runs a DWL trace over G ⊎ H, lifts P_iso(G, H) across every executed
operation inside one proof builder, derives the constant 1 from the axioms
of the first state whose side sketches differ and re-checks the finished
proof against P_iso(G, H) before reporting it.
"""

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ..config import get_settings
from ..derive.deriver import MonomialDeriver
from ..derive.system import AxiomSystem
from ..dwl.models import DwlTrace, Outcome, TraceRun
from ..dwl.operations import run_trace
from ..errors import RefuterError
from ..lift.lifter import LiftResult, lift_axioms
from ..polysys.piso import IsoAxioms, piso
from ..prooflog.builder import ProofBuilder
from ..prooflog.checker import check
from ..prooflog.models import Proof, ProofMode, Verdict
from ..prooflog.serialization import save_proof
from ..structures.models import Structure
from .report import LiftStats, RefutationOutcome, RefutationReport

logger = logging.getLogger(__name__)


@dataclass
class LiftedRun:
    """P_iso of the inputs, the shared builder and the axioms of the last state"""

    axioms: IsoAxioms
    builder: ProofBuilder
    system: AxiomSystem
    lifts: list[LiftResult] = field(default_factory=list)

    @property
    def extension_count(self) -> int:
        return sum(result.extension_count for result in self.lifts)


@dataclass
class Refutation:
    report: RefutationReport
    run: TraceRun
    proof: Optional[Proof] = None
    verdict: Optional[Verdict] = None


def lift_run(run: TraceRun, *, restricted_ext: Optional[bool] = None) -> LiftedRun:
    """Lift P_iso of the first state across every state of ``run``"""
    if restricted_ext is None:
        restricted_ext = get_settings().restricted_ext
    axioms = piso(run.states[0].union)
    mode = ProofMode.EPC3 if len(run.states) > 1 else ProofMode.MC3
    builder = ProofBuilder(axioms.polynomials(), mode, restricted_ext=restricted_ext)
    lifted = LiftedRun(axioms=axioms, builder=builder, system=AxiomSystem.from_axioms(axioms, builder))
    for prev, next_state in zip(run.states, run.states[1:]):
        result = lift_axioms(prev, next_state, lifted.system)
        lifted.lifts.append(result)
        lifted.system = result.system
    return lifted


def extension_bound(run: TraceRun) -> int:
    """Σ |V(G_i)|² over the states produced by operations"""
    return sum(state.union.left_size**2 for state in run.states[1:])


def _lift_stats(lifted: LiftedRun) -> list[LiftStats]:
    return [
        LiftStats(
            step=step,
            op=result.plan.op.value,
            colour=result.plan.colour,
            new_left=len(result.plan.new_left),
            new_right=len(result.plan.new_right),
            extension_count=result.extension_count,
            steps_appended=result.steps_appended,
            seconds=round(result.seconds, 6),
        )
        for step, result in enumerate(lifted.lifts, start=1)
    ]


def refute(
    left: Structure,
    right: Structure,
    trace: DwlTrace,
    *,
    proof_path: Optional[Union[str, Path]] = None,
    jobs: Optional[int] = None,
) -> Refutation:
    """
    Compile ``trace`` into a checked refutation of P_iso(left, right).

    Returns NOT_DISTINGUISHED without a proof when the trace ends with equal
    side sketches. Domain errors propagate to the caller.
    """
    timings: dict[str, float] = {}
    started = time.perf_counter()
    run = run_trace(left, right, trace, jobs=jobs)
    timings["trace"] = round(time.perf_counter() - started, 6)
    operations_run = len(run.states) - 1

    if run.outcome == Outcome.NOT_DISTINGUISHED:
        logger.info(f"No refutation: sketches stay equal through {operations_run} operations")
        report = RefutationReport(
            outcome=RefutationOutcome.NOT_DISTINGUISHED, operations_run=operations_run, timings=timings
        )
        return Refutation(report=report, run=run)

    started = time.perf_counter()
    lifted = lift_run(run)
    timings["lift"] = round(time.perf_counter() - started, 6)
    bound = extension_bound(run)
    if lifted.extension_count > bound:
        raise RefuterError(
            f"{lifted.extension_count} extension variables exceed the bound {bound}", code="INTERNAL"
        )

    started = time.perf_counter()
    builder = lifted.builder
    step = MonomialDeriver(run.final.history, lifted.system).one()
    if step != len(builder) - 1:
        builder.lin(step, step, 1, 0)
    proof = builder.build()
    timings["derive"] = round(time.perf_counter() - started, 6)

    started = time.perf_counter()
    verdict = check(proof, lifted.axioms.polynomials())
    timings["check"] = round(time.perf_counter() - started, 6)
    if not verdict.refutation:
        logger.error(f"Emitted proof failed its own check: {verdict.summary()}")
        raise RefuterError(f"emitted proof failed the check: {verdict.summary()}", code="INTERNAL")

    if proof_path is not None:
        save_proof(proof, proof_path)
    report = RefutationReport(
        outcome=RefutationOutcome.REFUTED,
        proof_path=str(proof_path) if proof_path is not None else None,
        mode=proof.mode.value,
        operations_run=operations_run,
        metrics=verdict.metrics,
        lifts=_lift_stats(lifted),
        extension_bound=bound,
        timings=timings,
    )
    logger.info(f"Refutation after {operations_run} operations: {report.summary()}")
    return Refutation(report=report, run=run, proof=proof, verdict=verdict)
