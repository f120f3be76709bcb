"""
Symmetric bilinear forms on Lie algebras.
"""
from fractions import Fraction
from typing import Any, Mapping, Sequence

from src.foundation import Matrix
from src.utils.errors import DeskError, ParseError, INVALID_INPUT
from src.utils.validation import InputValidator
from .lie import LieAlgebra


class InvariantPairing:
    """Gram matrix of a pairing on ``base``; invariance is checked by the validator."""

    def __init__(self, base: LieAlgebra, gram: Matrix, name: str = 'pairing'):
        if gram.shape != (base.dim, base.dim):
            raise DeskError(INVALID_INPUT, f"gram shape {gram.shape} does not match dim {base.dim}")
        self.base = base
        self.gram = gram
        self.name = name

    def pair(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for i, a in u.items():
            for j, b in v.items():
                g = self.gram.entry(i, j)
                if g:
                    total += a * b * g
        return total

    def pair_basis(self, i: int, j: int) -> Fraction:
        return self.gram.entry(i, j)

    @classmethod
    def killing(cls, base: LieAlgebra) -> 'InvariantPairing':
        """Killing form tr(ad x ad y)."""
        ads = [base.ad_matrix(i) for i in range(base.dim)]
        data = [[_trace(ads[i] @ ads[j]) for j in range(base.dim)] for i in range(base.dim)]
        return cls(base, Matrix(base.dim, base.dim, data), name='killing')

    @classmethod
    def from_dict(cls, base: LieAlgebra, data: Mapping[str, Any], source: str = None) -> 'InvariantPairing':
        """``{"gram": [row-major rationals]}``, flat or nested."""
        raw = data.get('gram') if isinstance(data, Mapping) else None
        if raw is None:
            raise ParseError("pairing file needs a 'gram' entry", file=source)
        flat: Sequence = [x for row in raw for x in row] if raw and isinstance(raw[0], list) else raw
        if len(flat) != base.dim * base.dim:
            raise ParseError(f"gram needs {base.dim * base.dim} entries, got {len(flat)}", file=source)
        values = [InputValidator.parse_rational(x, source) for x in flat]
        rows = [values[i * base.dim:(i + 1) * base.dim] for i in range(base.dim)]
        return cls(base, Matrix(base.dim, base.dim, rows), name=str(data.get('name', source or 'pairing')))


def _trace(m: Matrix) -> Fraction:
    return sum((m.entry(i, i) for i in range(m.rows)), Fraction(0))
