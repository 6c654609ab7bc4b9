"""
Refutation report models.

A report is what one ``refute`` run leaves behind besides the proof file:
the outcome, the checker's metrics, per-lift statistics and stage timings.
"""

from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, Field

from ..prooflog.models import ProofMetrics


class RefutationOutcome(str, Enum):
    REFUTED = "REFUTED"
    NOT_DISTINGUISHED = "NOT_DISTINGUISHED"
    ERROR = "ERROR"


class LiftStats(BaseModel):
    """Bookkeeping for one lifted operation"""

    step: int
    op: str
    colour: str
    new_left: int
    new_right: int
    extension_count: int
    steps_appended: int
    seconds: float


class RefutationReport(BaseModel):
    """Outcome and metrics of one pipeline run"""

    outcome: RefutationOutcome
    proof_path: Optional[str] = None
    mode: Optional[str] = None
    operations_run: int = 0
    metrics: ProofMetrics = Field(default_factory=ProofMetrics)
    lifts: List[LiftStats] = Field(default_factory=list)
    extension_bound: int = 0
    timings: Dict[str, float] = Field(default_factory=dict)
    error_code: Optional[str] = None
    error_message: Optional[str] = None

    @property
    def exit_code(self) -> int:
        if self.outcome == RefutationOutcome.REFUTED:
            return 0
        if self.outcome == RefutationOutcome.ERROR:
            return 65
        return 1

    def summary(self) -> str:
        if self.outcome == RefutationOutcome.ERROR:
            return f"ERROR {self.error_code}: {self.error_message}"
        if self.outcome == RefutationOutcome.NOT_DISTINGUISHED:
            return f"NOT_DISTINGUISHED after {self.operations_run} operations"
        m = self.metrics
        return (
            f"REFUTED mode={self.mode} steps={m.steps} size={m.size} bits={m.bit_complexity} "
            f"extensions={m.extension_count} degree={m.max_degree}"
        )

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.model_dump(mode="json"), sort_keys=False)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_yaml(), encoding="utf-8")
