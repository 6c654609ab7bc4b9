"""
Derivations from colour separations.

MC3 proofs of separated monomials and of 1 for unions whose sides have
different sketches, plus the brute-force game oracle they are tested against.
"""

from .deriver import MonomialDeriver, Position, derive_monomial, derive_one
from .oracle import derivable_closure_oracle
from .system import AxiomSystem

__all__ = [
    "AxiomSystem",
    "MonomialDeriver",
    "Position",
    "derivable_closure_oracle",
    "derive_monomial",
    "derive_one",
]
