"""
Polynomial systems.

Exact-rational sparse polynomials, variable identifiers, extension
definitions, evaluation and the isomorphism axiom system.
"""

from .evaluate import Evaluator, evaluate
from .extension import (
    ExtensionDescriptor,
    ExtensionKind,
    classify_extension,
    pair_extension,
    scc_extension,
)
from .piso import Axiom, AxiomKind, IsoAxioms, is_local_isomorphism, piso
from .polynomial import Monomial, Polynomial, add_scaled, mul_var, parse_polynomial
from .variables import VariableId, VariableKind, parse_variable

__all__ = [
    "Axiom",
    "AxiomKind",
    "Evaluator",
    "ExtensionDescriptor",
    "ExtensionKind",
    "IsoAxioms",
    "Monomial",
    "Polynomial",
    "VariableId",
    "VariableKind",
    "add_scaled",
    "classify_extension",
    "evaluate",
    "is_local_isomorphism",
    "mul_var",
    "pair_extension",
    "parse_polynomial",
    "parse_variable",
    "piso",
    "scc_extension",
]
