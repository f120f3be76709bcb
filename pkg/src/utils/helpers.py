"""
General helper functions for Moduli Desk.
"""
from src.utils.errors import DeskError

_HINTS = {
    'PARSE_ERROR': "Input could not be read. Check the file syntax and rational literals.",
    'VALIDATION_ERROR': "Input parsed but violates its axioms. See the embedded report.",
    'INVALID_INPUT': "Input objects are not valid for this operation.",
    'UNKNOWN_BUILTIN': "No builtin with that name. Run with --help for the catalog.",
    'TYPE_MISMATCH': "An element does not have the expected degree or ambient algebra.",
    'BUDGET_EXCEEDED': "Enumeration exceeds the configured budget. Raise --budget or shrink the input.",
    'COMPLEX_NOT_CLOSED': "The differential does not square to zero.",
    'MISSING_PULLBACK': "The site does not name a pullback the cover needs.",
    'DEGREE_BOUND_EXCEEDED': "Polynomial degree exceeds the configured bound.",
}


def format_error_message(error: Exception) -> str:
    """
    Format error messages for user display.

    Args:
        error (Exception): The exception to format

    Returns:
        str: User-friendly error message
    """
    if isinstance(error, DeskError):
        hint = _HINTS.get(error.code)
        if hint:
            return f"error [{error.code}]: {error.message} ({hint})"
        return f"error [{error.code}]: {error.message}"
    return f"error: {str(error)} ({type(error).__name__})"

