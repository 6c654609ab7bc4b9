"""Evaluation of polynomials under 0/1 assignments with extension semantics."""

from fractions import Fraction
from typing import Mapping, Optional

from ..errors import AlgebraError
from .polynomial import Polynomial
from .variables import VariableId


class Evaluator:
    """
    Evaluates polynomials, computing each extension variable once from its
    definition. Definitions may mention earlier extension variables.
    """

    def __init__(self, assignment: Mapping[VariableId, int], ext_table: Mapping[int, Polynomial]):
        self.assignment = assignment
        self.ext_table = ext_table
        self._ext_values: dict[int, Fraction] = {}
        self._pending: set[int] = set()

    def value(self, x: VariableId) -> Fraction:
        if not x.is_ext:
            if x not in self.assignment:
                raise AlgebraError(f"no value for {x}", code="INCOMPLETE_ASSIGNMENT")
            return Fraction(self.assignment[x])
        if x.a in self._ext_values:
            return self._ext_values[x.a]
        definition: Optional[Polynomial] = self.ext_table.get(x.a)
        if definition is None:
            raise AlgebraError(f"no definition for {x}", code="INCOMPLETE_ASSIGNMENT")
        if x.a in self._pending:
            raise AlgebraError(f"cyclic definition through {x}", code="INCOMPLETE_ASSIGNMENT")
        self._pending.add(x.a)
        result = self.evaluate(definition)
        self._pending.discard(x.a)
        self._ext_values[x.a] = result
        return result

    def evaluate(self, p: Polynomial) -> Fraction:
        total = Fraction(0)
        for monomial, coefficient in p.terms.items():
            term = coefficient
            for x in monomial:
                term *= self.value(x)
            total += term
        return total


def evaluate(
    p: Polynomial,
    assignment: Mapping[VariableId, int],
    ext_table: Optional[Mapping[int, Polynomial]] = None,
) -> Fraction:
    """Value of p with ORIG variables from ``assignment`` and extensions by definition"""
    return Evaluator(assignment, ext_table or {}).evaluate(p)
