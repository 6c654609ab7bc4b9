"""
Axiom lifting across DWL operations.

Plans the extension variables of one pair or scc operation and derives the
isomorphism axioms of the next cloud state from those of the previous one.
"""

from .lifter import AxiomLifter, LiftResult, lift_axioms
from .plan import LiftPlan, plan

__all__ = [
    "AxiomLifter",
    "LiftPlan",
    "LiftResult",
    "lift_axioms",
    "plan",
]
