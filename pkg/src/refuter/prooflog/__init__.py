"""
Proof logging.

Proof objects for MC3/PC3/EPC3, the single-writer builder, the independent
checker with metrics, the proof file format and the soundness probe.
"""

from .builder import MAX_DEGREE, ProofBuilder
from .checker import ProofChecker, check
from .models import (
    Justification,
    Proof,
    ProofMetrics,
    ProofMode,
    ProofStep,
    Rejection,
    Rule,
    Verdict,
)
from .probe import ProbeResult, isomorphism_assignment, soundness_probe
from .serialization import dump_proof, load_proof, read_proof, save_proof

__all__ = [
    "MAX_DEGREE",
    "Justification",
    "ProbeResult",
    "Proof",
    "ProofBuilder",
    "ProofChecker",
    "ProofMetrics",
    "ProofMode",
    "ProofStep",
    "Rejection",
    "Rule",
    "Verdict",
    "check",
    "dump_proof",
    "isomorphism_assignment",
    "load_proof",
    "read_proof",
    "save_proof",
    "soundness_probe",
]
