"""
Input text validation and parsing utilities.
"""
import re
from fractions import Fraction
from typing import List, Tuple

from .errors import ParseError
from .logging import logger


class InputValidator:
    """Class to validate and parse textual inputs: rationals, builtin references, term lists."""

    RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')
    BUILTIN_PATTERN = re.compile(r'^(?:builtin:)?([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(([^()]*)\))?$')
    IDENTIFIER_PATTERN = re.compile(r'^[A-Za-z0-9_][A-Za-z0-9_\-\.]*$')

    @classmethod
    def parse_rational(cls, text, source: str = None) -> Fraction:
        """
        Parse "p", "p/q" or "-p/q" into a reduced Fraction.

        Args:
            text: The literal (ints are accepted as-is)
            source (str): File name for error reporting

        Returns:
            Fraction: the value in lowest terms
        """
        if isinstance(text, bool):
            raise ParseError(f"not a rational: {text!r}", file=source)
        if isinstance(text, int):
            return Fraction(text)
        if isinstance(text, Fraction):
            return text
        if not isinstance(text, str):
            raise ParseError(f"not a rational: {text!r}", file=source)
        match = cls.RATIONAL_PATTERN.match(text)
        if not match:
            logger.warning(f"Rejected rational literal {text!r}")
            raise ParseError(f"not a rational: {text!r}", file=source)
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise ParseError(f"zero denominator in {text!r}", file=source)
        return Fraction(numerator, denominator)

    @staticmethod
    def format_rational(value: Fraction) -> str:
        """Serialize as "p" or "p/q"."""
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @classmethod
    def is_builtin_reference(cls, text: str) -> bool:
        return isinstance(text, str) and text.startswith('builtin:')

    @classmethod
    def parse_builtin(cls, text: str) -> Tuple[str, List[str]]:
        """
        Split a builtin reference like ``builtin:torus_gca(2)`` into name and params.

        Returns:
            tuple: (name, list of parameter strings)
        """
        match = cls.BUILTIN_PATTERN.match(text.strip())
        if not match:
            raise ParseError(f"malformed builtin reference: {text!r}")
        name = match.group(1)
        raw = match.group(2)
        params = [p.strip() for p in raw.split(',')] if raw and raw.strip() else []
        return name, params

    @classmethod
    def split_product(cls, text: str) -> List[str]:
        """Split ``a*b`` at top-level asterisks (outside parentheses)."""
        parts, depth, current = [], 0, []
        for char in text:
            if char == '(':
                depth += 1
            elif char == ')':
                depth -= 1
            if char == '*' and depth == 0:
                parts.append(''.join(current).strip())
                current = []
            else:
                current.append(char)
        parts.append(''.join(current).strip())
        if any(not p for p in parts) or depth != 0:
            raise ParseError(f"malformed product reference: {text!r}")
        return parts

    @classmethod
    def parse_index_tuple(cls, text: str) -> Tuple[int, ...]:
        """Parse "0,0,2" into (0, 0, 2)."""
        text = text.strip().strip('()[]')
        if not text:
            return ()
        try:
            return tuple(int(part) for part in text.split(','))
        except ValueError:
            raise ParseError(f"not an index tuple: {text!r}")

    @classmethod
    def parse_terms(cls, text: str) -> List[Tuple[Tuple[str, ...], Fraction]]:
        """
        Parse an inline term list ``th1:E:t=1, th2:H:t=-1/2``.

        Each term is a colon-separated key followed by ``=coefficient``; a missing
        coefficient means 1.
        """
        terms = []
        for chunk in text.split(','):
            chunk = chunk.strip()
            if not chunk:
                continue
            if '=' in chunk:
                key, value = chunk.split('=', 1)
                coefficient = cls.parse_rational(value)
            else:
                key, coefficient = chunk, Fraction(1)
            labels = tuple(part.strip() for part in key.split(':'))
            if any(not cls.IDENTIFIER_PATTERN.match(label) for label in labels):
                raise ParseError(f"malformed term: {chunk!r}")
            terms.append((labels, coefficient))
        return terms
