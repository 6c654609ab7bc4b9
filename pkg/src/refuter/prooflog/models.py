"""
Proof objects and checker verdicts.

A proof is an indexed list of steps, each a polynomial with the inference
that justifies it, plus the table of extension definitions. Verdicts and
metrics are pydantic models so they can be reported as YAML.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, Field

from ..polysys.polynomial import Polynomial
from ..polysys.variables import VariableId


class ProofMode(str, Enum):
    """Calculus a proof is checked against"""

    MC3 = "mc3"
    PC3 = "pc3"
    EPC3 = "epc3"


class Rule(str, Enum):
    AXIOM = "axiom"
    BOOLEAN = "boolean"
    MUL = "mul"
    LIN = "lin"
    EXT = "ext"


@dataclass(frozen=True, slots=True)
class Justification:
    """
    Inference behind one step. ``index`` is the axiom index for AXIOM and
    the extension index for EXT.
    """

    rule: Rule
    premises: tuple[int, ...] = ()
    variable: Optional[VariableId] = None
    index: Optional[int] = None
    coefficients: tuple[Fraction, ...] = ()

    @classmethod
    def axiom(cls, index: int) -> "Justification":
        return cls(Rule.AXIOM, index=index)

    @classmethod
    def boolean(cls, x: VariableId) -> "Justification":
        return cls(Rule.BOOLEAN, variable=x)

    @classmethod
    def mul(cls, premise: int, x: VariableId) -> "Justification":
        return cls(Rule.MUL, premises=(premise,), variable=x)

    @classmethod
    def lin(cls, p: int, q: int, a: Fraction, b: Fraction) -> "Justification":
        return cls(Rule.LIN, premises=(p, q), coefficients=(Fraction(a), Fraction(b)))

    @classmethod
    def ext(cls, index: int) -> "Justification":
        return cls(Rule.EXT, index=index)


@dataclass(frozen=True, slots=True)
class ProofStep:
    polynomial: Polynomial
    justification: Justification


@dataclass
class Proof:
    """Steps, extension definitions, calculus and restricted-form flag"""

    steps: list[ProofStep] = field(default_factory=list)
    ext_table: dict[int, Polynomial] = field(default_factory=dict)
    mode: ProofMode = ProofMode.MC3
    restricted_ext: bool = True

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def last(self) -> Optional[Polynomial]:
        return self.steps[-1].polynomial if self.steps else None


class Rejection(BaseModel):
    """Why and where a proof was rejected"""

    code: str
    step: int
    message: str


class ProofMetrics(BaseModel):
    steps: int = 0
    size: int = 0
    bit_complexity: int = 0
    extension_count: int = 0
    max_degree: int = 0


class Verdict(BaseModel):
    """Checker outcome"""

    accepted: bool
    refutation: bool = False
    metrics: ProofMetrics = Field(default_factory=ProofMetrics)
    rejection: Optional[Rejection] = None

    @property
    def exit_code(self) -> int:
        if not self.accepted:
            return 2
        return 0 if self.refutation else 1

    def summary(self) -> str:
        if not self.accepted and self.rejection is not None:
            return f"REJECT {self.rejection.code} at step {self.rejection.step}: {self.rejection.message}"
        verdict = "REFUTATION" if self.refutation else "ACCEPT"
        m = self.metrics
        return (
            f"{verdict} steps={m.steps} size={m.size} bits={m.bit_complexity} "
            f"extensions={m.extension_count} degree={m.max_degree}"
        )
