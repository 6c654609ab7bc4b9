"""
Refutation pipeline: trace execution, axiom lifting, the final derivation
of 1 and the checked report.
"""

from .refute import LiftedRun, Refutation, extension_bound, lift_run, refute
from .report import LiftStats, RefutationOutcome, RefutationReport

__all__ = [
    "LiftStats",
    "LiftedRun",
    "Refutation",
    "RefutationOutcome",
    "RefutationReport",
    "extension_bound",
    "lift_run",
    "refute",
]
