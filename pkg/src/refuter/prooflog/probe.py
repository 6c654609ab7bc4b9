"""Semantic soundness probe: every line of a sound proof vanishes on a model."""

import logging
from typing import Mapping, Optional, Sequence

from pydantic import BaseModel

from ..errors import AlgebraError
from ..polysys.evaluate import Evaluator
from ..polysys.piso import IsoAxioms
from ..polysys.polynomial import Polynomial
from ..polysys.variables import VariableId
from .models import Proof

logger = logging.getLogger(__name__)


class ProbeResult(BaseModel):
    passed: bool
    failed_step: Optional[int] = None
    value: Optional[str] = None


def isomorphism_assignment(axioms: IsoAxioms, mapping: Mapping[int, int]) -> dict[VariableId, int]:
    """
    0/1 assignment X_vw = [mapping(v) = w] over the variables of ``axioms``.

    ``mapping`` sends side-local LEFT vertices to side-local RIGHT vertices.
    """
    return {x: int(mapping.get(x.a) == x.b) for x in axioms.variables.values()}


def soundness_probe(
    proof: Proof, axioms: Sequence[Polynomial], assignment: Mapping[VariableId, int]
) -> ProbeResult:
    """
    Evaluate every step under ``assignment`` with extension variables fixed
    by their definitions. The assignment must be 0/1 and zero every axiom.
    """
    if any(value not in (0, 1) for value in assignment.values()):
        raise AlgebraError("assignment must be 0/1", code="BAD_ASSIGNMENT")
    evaluator = Evaluator(assignment, proof.ext_table)
    for index, axiom in enumerate(axioms):
        if evaluator.evaluate(axiom) != 0:
            raise AlgebraError(f"assignment does not zero axiom {index}", code="BAD_ASSIGNMENT")
    for index, step in enumerate(proof.steps):
        value = evaluator.evaluate(step.polynomial)
        if value != 0:
            logger.warning(f"Soundness probe failed at step {index} with value {value}")
            return ProbeResult(passed=False, failed_step=index, value=str(value))
    return ProbeResult(passed=True)
