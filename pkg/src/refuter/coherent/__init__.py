"""
Coherent configurations.

2-WL refinement with every layer kept, canonical sketches, separation
witnesses, per-colour SCCs and brute-force validators.
"""

from .history import ColorHistory, refine
from .naive import naive_refine, same_partition
from .scc import components_of, sccs_of_color
from .sketch import AlgebraicSketch, SketchColour, restrict_sketch, sketch
from .validator import CheckResult, ValidationReport, validate_configuration, validate_layers
from .witness import SeparationWitness, first_separation, path_counts

__all__ = [
    "AlgebraicSketch",
    "CheckResult",
    "ColorHistory",
    "SeparationWitness",
    "SketchColour",
    "ValidationReport",
    "components_of",
    "first_separation",
    "naive_refine",
    "path_counts",
    "refine",
    "restrict_sketch",
    "same_partition",
    "sccs_of_color",
    "sketch",
    "validate_configuration",
    "validate_layers",
]
