"""
Finite-dimensional Lie algebras and Lie modules given by structure constants.
"""
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from src.foundation import Matrix, add_into, cleaned
from src.utils.errors import DeskError, ParseError, INVALID_INPUT
from src.utils.validation import InputValidator

Bracket = Dict[Tuple[int, int], Dict[int, Fraction]]


def _resolve_index(basis: Sequence[str], token: str, source: str = None) -> int:
    token = token.strip()
    if token in basis:
        return basis.index(token)
    if token.isdigit() and int(token) < len(basis):
        return int(token)
    raise ParseError(f"unknown basis element {token!r}", file=source)


class LieAlgebra:
    """
    Lie algebra with sparse structure constants.

    ``brackets[(i, j)]`` holds [e_i, e_j] as a sparse vector. When only one ordering of
    a pair is supplied the other is filled in by antisymmetry; when both are supplied
    they are kept as given so the validator can see inconsistencies.
    """

    def __init__(self, basis: Sequence[str], brackets: Mapping[Tuple[int, int], Mapping[int, Any]],
                 name: str = 'lie', splitting: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None):
        self.basis = tuple(str(b) for b in basis)
        if len(set(self.basis)) != len(self.basis):
            raise DeskError(INVALID_INPUT, "duplicate Lie algebra basis labels")
        self.name = name
        self.splitting = splitting
        self.pairing = None
        n = len(self.basis)
        table: Bracket = {}
        for (i, j), value in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DeskError(INVALID_INPUT, f"bracket index ({i}, {j}) out of range")
            if any(not (0 <= k < n) for k in value):
                raise DeskError(INVALID_INPUT, f"bracket value for ({i}, {j}) out of range")
            table[(i, j)] = cleaned(value)
        for (i, j), value in list(table.items()):
            if (j, i) not in table:
                table[(j, i)] = {k: -v for k, v in value.items()}
        self._brackets = table

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise DeskError(INVALID_INPUT, f"{label!r} is not a basis element of {self.name}")

    def bracket_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        return self._brackets.get((i, j), {})

    def structure_constants(self) -> Bracket:
        return {key: dict(value) for key, value in self._brackets.items() if value}

    def bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        result: Dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                value = self._brackets.get((i, j))
                if value:
                    add_into(result, value, a * b)
        return result

    def ad_matrix(self, i: int) -> Matrix:
        """Matrix of ad(e_i) on the basis."""
        data = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.bracket_basis(i, j).items():
                data[k][j] = c
        return Matrix(self.dim, self.dim, data)

    def with_name(self, name: str) -> 'LieAlgebra':
        self.name = name
        return self

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = None) -> 'LieAlgebra':
        """
        Build from the file format ``{"basis": [...], "brackets": {"i,j": {label: "p/q"}}}``.
        Pair keys and value keys may be labels or indices.
        """
        if not isinstance(data, Mapping) or 'basis' not in data:
            raise ParseError("Lie algebra file needs a 'basis' list", file=source)
        basis = [str(b) for b in data['basis']]
        brackets = {}
        for key, value in (data.get('brackets') or {}).items():
            parts = key.split(',')
            if len(parts) != 2:
                raise ParseError(f"bracket key {key!r} is not a pair", file=source)
            i, j = (_resolve_index(basis, p, source) for p in parts)
            brackets[(i, j)] = {
                _resolve_index(basis, label, source): InputValidator.parse_rational(c, source)
                for label, c in value.items()
            }
        return cls(basis, brackets, name=str(data.get('name', source or 'lie')))

    def to_dict(self) -> Dict[str, Any]:
        brackets = {}
        for (i, j), value in sorted(self._brackets.items()):
            if i < j and value:
                brackets[f"{self.basis[i]},{self.basis[j]}"] = {
                    self.basis[k]: InputValidator.format_rational(c) for k, c in sorted(value.items())
                }
        return {'name': self.name, 'basis': list(self.basis), 'brackets': brackets}


class LieModule:
    """Finite-dimensional representation: ``action[i]`` is the matrix of e_i."""

    def __init__(self, base: LieAlgebra, dimension: int, action: Sequence[Matrix],
                 name: str = 'module', basis: Optional[Sequence[str]] = None):
        if len(action) != base.dim:
            raise DeskError(INVALID_INPUT, f"module needs {base.dim} action matrices, got {len(action)}")
        for matrix in action:
            if matrix.shape != (dimension, dimension):
                raise DeskError(INVALID_INPUT, f"action matrix has shape {matrix.shape}, expected {dimension}x{dimension}")
        self.base = base
        self.dimension = dimension
        self.action = tuple(action)
        self.name = name
        self.basis = tuple(basis) if basis else tuple(f"m{i}" for i in range(dimension))

    def act(self, i: int, vector: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        return self.action[i].apply(vector)

    @classmethod
    def trivial(cls, base: LieAlgebra, dimension: int = 1) -> 'LieModule':
        return cls(base, dimension, [Matrix.zeros(dimension, dimension)] * base.dim, name='trivial')

    @classmethod
    def adjoint(cls, base: LieAlgebra) -> 'LieModule':
        return cls(base, base.dim, [base.ad_matrix(i) for i in range(base.dim)],
                   name='adjoint', basis=base.basis)

    @classmethod
    def coadjoint(cls, base: LieAlgebra) -> 'LieModule':
        return cls(base, base.dim, [base.ad_matrix(i).transpose().scale(-1) for i in range(base.dim)],
                   name='coadjoint', basis=tuple(f"{b}*" for b in base.basis))

    @classmethod
    def from_dict(cls, base: LieAlgebra, data: Mapping[str, Any], source: str = None) -> 'LieModule':
        """``{"dimension": n, "action": {label: [[...], ...]}}`` with row-major rationals."""
        try:
            dimension = int(data['dimension'])
            raw = data['action']
        except (KeyError, TypeError, ValueError):
            raise ParseError("module file needs 'dimension' and 'action'", file=source)
        action = []
        for label in base.basis:
            rows = raw.get(label)
            if rows is None:
                action.append(Matrix.zeros(dimension, dimension))
                continue
            action.append(Matrix(dimension, dimension,
                                 [[InputValidator.parse_rational(x, source) for x in row] for row in rows]))
        return cls(base, dimension, action, name=str(data.get('name', source or 'module')))
