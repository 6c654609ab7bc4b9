"""
DWL-to-EPC refuter.

Runs Deep Weisfeiler Leman traces over a pair of relational structures and
compiles them into degree-3 extended polynomial calculus refutations of
their isomorphism axioms, checked by an independent proof checker.
"""

from .config import RefuterSettings, get_settings
from .errors import RefuterError

__version__ = "0.1.0"

__all__ = ["RefuterError", "RefuterSettings", "__version__", "get_settings"]
