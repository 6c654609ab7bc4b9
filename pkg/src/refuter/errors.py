"""
Exception hierarchy for the refuter toolkit.

Every domain error carries a stable ``code`` string so that the CLI, the
reports and the tests can match on it without parsing messages. Checker
rejections are not exceptions; they travel inside the verdict model.
"""

from typing import Optional


class RefuterError(Exception):
    """Base exception for all refuter errors"""

    code: str = "ERROR"

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class StructureError(RefuterError):
    """Raised for malformed, invalid or incompatible structures"""

    code = "VALIDATION_ERROR"


class StructureParseError(StructureError):
    """Raised when a graph file cannot be parsed"""

    code = "PARSE_ERROR"

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SizeLimitError(RefuterError):
    """Raised when a brute-force routine is asked to run on too large an input"""

    code = "SIZE_LIMIT"


class ConfigurationError(RefuterError):
    """Raised when a colouring violates a property the refinement guarantees"""

    code = "CONFIGURATION_ERROR"


class AlgebraError(RefuterError):
    """Raised for polynomial evaluation and axiom-system problems"""

    code = "ALGEBRA_ERROR"


class ProofFormatError(RefuterError):
    """Raised when a proof file does not follow the epcproof format"""

    code = "PROOF_FORMAT"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DerivationError(RefuterError):
    """Raised when a monomial or refutation derivation cannot be produced"""

    code = "NOT_SEPARATED"


class DwlError(RefuterError):
    """Raised for invalid Deep Weisfeiler Leman operations and traces"""

    code = "DWL_ERROR"


class LiftError(RefuterError):
    """Raised when a lifted axiom system cannot be derived or does not match"""

    code = "LIFT_MISMATCH"
