"""
Exception hierarchy for Moduli Desk.

Every error carries a stable code so reports and exit handling can branch on it
without parsing messages.
"""
from typing import Any, Dict, Optional

COMPLEX_NOT_CLOSED = "COMPLEX_NOT_CLOSED"
INVALID_INPUT = "INVALID_INPUT"
UNKNOWN_BUILTIN = "UNKNOWN_BUILTIN"
TYPE_MISMATCH = "TYPE_MISMATCH"
PRECONDITION_DEFECT_TOO_LOW = "PRECONDITION_DEFECT_TOO_LOW"
DEGREE_BOUND_EXCEEDED = "DEGREE_BOUND_EXCEEDED"
NO_INTEGRATION = "NO_INTEGRATION"
WRONG_TOP_DEGREE = "WRONG_TOP_DEGREE"
WRONG_LIE_ALGEBRA = "WRONG_LIE_ALGEBRA"
INDEX_OUT_OF_RANGE = "INDEX_OUT_OF_RANGE"
COMPOSE_MISMATCH = "COMPOSE_MISMATCH"
INVALID_DIAGRAM = "INVALID_DIAGRAM"
MISSING_PULLBACK = "MISSING_PULLBACK"
NOT_DISJOINT_POSET = "NOT_DISJOINT_POSET"
BUDGET_EXCEEDED = "BUDGET_EXCEEDED"
PARSE_ERROR = "PARSE_ERROR"
VALIDATION_ERROR = "VALIDATION_ERROR"


class DeskError(Exception):
    """Base error with a machine-readable code and JSON-safe details."""

    def __init__(self, code: str, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.details = details or {}

    def to_payload(self) -> Dict[str, Any]:
        return {'code': self.code, 'message': self.message, 'details': self.details}


class ParseError(DeskError):
    """Malformed input text or file."""

    def __init__(self, message: str, file: Optional[str] = None, line: Optional[int] = None):
        details = {}
        if file is not None:
            details['file'] = file
        if line is not None:
            details['line'] = line
        super().__init__(PARSE_ERROR, message, details)
        self.file = file
        self.line = line


class ValidationError(DeskError):
    """Input parsed but failed its owning validator; the report is embedded."""

    def __init__(self, message: str, report: Dict[str, Any], code: str = VALIDATION_ERROR):
        super().__init__(code, message, {'report': report})
        self.report = report


class ComplexNotClosedError(DeskError):
    """A composite of consecutive differentials is nonzero."""

    def __init__(self, degree: int):
        super().__init__(
            COMPLEX_NOT_CLOSED,
            f"d∘d is nonzero starting in degree {degree}",
            {'degree': degree},
        )
        self.degree = degree
