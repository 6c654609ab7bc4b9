"""
Deep Weisfeiler Leman engine.

Cloud states, the pair and scc operations, trace files and the trace runner.
"""

from .models import (
    CloudState,
    DwlOp,
    DwlTrace,
    OpKind,
    Outcome,
    Provenance,
    ProvenanceKind,
    TraceRun,
    load_trace,
    parse_trace,
    save_trace,
)
from .operations import (
    E_LEFT,
    E_RIGHT,
    apply_op,
    exec_pair,
    exec_scc,
    fresh_relation_name,
    initial_state,
    run_trace,
)

__all__ = [
    "E_LEFT",
    "E_RIGHT",
    "CloudState",
    "DwlOp",
    "DwlTrace",
    "OpKind",
    "Outcome",
    "Provenance",
    "ProvenanceKind",
    "TraceRun",
    "apply_op",
    "exec_pair",
    "exec_scc",
    "fresh_relation_name",
    "initial_state",
    "load_trace",
    "parse_trace",
    "run_trace",
    "save_trace",
]
