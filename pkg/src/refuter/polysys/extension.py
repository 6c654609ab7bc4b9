"""
Extension-variable definitions.

Restricted definitions are products of two variables (PAIR) or averaged sums
(1/n)·(X_1 + ... + X_{n²}) over n² distinct variables (SCC). Anything else is
GENERAL and only accepted by unrestricted proofs.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Sequence

from ..errors import AlgebraError
from .polynomial import Polynomial
from .variables import VariableId


class ExtensionKind(str, Enum):
    """Shape of an extension definition"""

    PAIR = "pair"
    SCC = "scc"
    GENERAL = "general"


@dataclass(frozen=True)
class ExtensionDescriptor:
    """An extension variable's definition together with its shape"""

    kind: ExtensionKind
    constituents: tuple[VariableId, ...]
    scale: int
    definition: Polynomial


def pair_extension(x: VariableId, y: VariableId) -> ExtensionDescriptor:
    """f = X·Y; a square when x == y"""
    return ExtensionDescriptor(
        kind=ExtensionKind.PAIR,
        constituents=tuple(sorted((x, y))),
        scale=1,
        definition=Polynomial.monomial((x, y)),
    )


def scc_extension(variables: Sequence[VariableId], n: int) -> ExtensionDescriptor:
    """f = (1/n)·Σ over n² distinct variables"""
    if n < 1 or len(set(variables)) != n * n or len(variables) != n * n:
        raise AlgebraError(f"averaged sum needs {n * n} distinct variables, got {len(variables)}")
    return ExtensionDescriptor(
        kind=ExtensionKind.SCC,
        constituents=tuple(sorted(variables)),
        scale=n,
        definition=Polynomial.linear(variables, Fraction(1, n)),
    )


def classify_extension(definition: Polynomial) -> ExtensionDescriptor:
    """Recognise the restricted shapes; everything else is GENERAL"""
    terms = list(definition.items())
    if len(terms) == 1 and len(terms[0][0]) == 2 and terms[0][1] == 1:
        x, y = terms[0][0]
        return pair_extension(x, y)
    if terms and all(len(m) == 1 for m, _ in terms):
        coefficients = {c for _, c in terms}
        n = isqrt(len(terms))
        if n * n == len(terms) and coefficients == {Fraction(1, n)}:
            return scc_extension([m[0] for m, _ in terms], n)
    return ExtensionDescriptor(
        kind=ExtensionKind.GENERAL,
        constituents=tuple(sorted(definition.variables())),
        scale=1,
        definition=definition,
    )
