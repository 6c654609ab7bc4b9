"""
Single-writer proof builder.

Producers append steps through this class; every method computes the step's
polynomial from its premises and returns the new step index. AXIOM, BOOLEAN
and MUL steps are memoised so repeated requests share one line.
"""

import logging
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ..errors import AlgebraError
from ..polysys.polynomial import Polynomial, Rational, add_scaled, mul_var
from ..polysys.variables import VariableId
from .models import Justification, Proof, ProofMode, ProofStep

logger = logging.getLogger(__name__)

MAX_DEGREE = 3


class ProofBuilder:
    """Append-only proof under construction"""

    def __init__(
        self,
        axioms: Sequence[Polynomial],
        mode: ProofMode = ProofMode.MC3,
        restricted_ext: bool = True,
    ):
        self.axioms = axioms
        self.mode = mode
        self.restricted_ext = restricted_ext
        self.steps: list[ProofStep] = []
        self.ext_table: dict[int, Polynomial] = {}
        self._memo: dict[tuple, int] = {}

    def __len__(self) -> int:
        return len(self.steps)

    def polynomial(self, step: int) -> Polynomial:
        return self.steps[step].polynomial

    def _append(self, polynomial: Polynomial, justification: Justification) -> int:
        if polynomial.degree > MAX_DEGREE:
            raise AlgebraError(
                f"step {len(self.steps)} would have degree {polynomial.degree}",
                code="DEGREE_EXCEEDED",
            )
        self.steps.append(ProofStep(polynomial, justification))
        return len(self.steps) - 1

    def _memoised(self, key: tuple, polynomial: Polynomial, justification: Justification) -> int:
        if key not in self._memo:
            self._memo[key] = self._append(polynomial, justification)
        return self._memo[key]

    def axiom(self, index: int) -> int:
        return self._memoised(("axiom", index), self.axioms[index], Justification.axiom(index))

    def boolean(self, x: VariableId) -> int:
        if x.is_ext:
            raise AlgebraError(f"Boolean axiom requested for extension variable {x}")
        square = Polynomial({(x, x): 1, (x,): -1})
        return self._memoised(("boolean", x), square, Justification.boolean(x))

    def mul(self, premise: int, x: VariableId) -> int:
        return self._memoised(
            ("mul", premise, x), mul_var(self.polynomial(premise), x), Justification.mul(premise, x)
        )

    def mul_monomial(self, premise: int, variables: Iterable[VariableId]) -> int:
        step = premise
        for x in sorted(variables):
            step = self.mul(step, x)
        return step

    def lin(self, p: int, q: int, a: Rational, b: Rational) -> int:
        a, b = Fraction(a), Fraction(b)
        result = add_scaled(self.polynomial(p), self.polynomial(q), a, b)
        return self._append(result, Justification.lin(p, q, a, b))

    def scale(self, step: int, a: Rational) -> int:
        if Fraction(a) == 1:
            return step
        return self.lin(step, step, a, 0)

    def linear_chain(self, terms: Iterable[tuple[int, Rational]]) -> int:
        """Σ coefficient·step as a chain of binary LIN steps"""
        pending = [(step, Fraction(c)) for step, c in terms if c != 0]
        if not pending:
            raise AlgebraError("empty linear combination")
        first, c0 = pending[0]
        if len(pending) == 1:
            return self.scale(first, c0)
        step, c1 = pending[1]
        total = self.lin(first, step, c0, c1)
        for step, c in pending[2:]:
            total = self.lin(total, step, 1, c)
        return total

    def extension(self, definition: Polynomial) -> tuple[VariableId, int]:
        """Introduce a fresh extension variable X_f; returns it and its EXT step"""
        index = len(self.ext_table)
        x = VariableId.ext(index)
        self.ext_table[index] = definition
        step = self._append(Polynomial.variable(x) - definition, Justification.ext(index))
        return x, step

    def build(self, mode: Optional[ProofMode] = None) -> Proof:
        return Proof(
            steps=list(self.steps),
            ext_table=dict(self.ext_table),
            mode=mode or self.mode,
            restricted_ext=self.restricted_ext,
        )

