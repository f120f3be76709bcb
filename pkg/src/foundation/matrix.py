"""
Exact rational matrices and Gaussian elimination.

All entries are ``fractions.Fraction``; elimination always produces the canonical
reduced row echelon form, so kernel bases and particular solutions are reproducible
bit for bit.
"""
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from src.utils.errors import DeskError, INVALID_INPUT

Vector = Tuple[Fraction, ...]


def to_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


class Matrix:
    """Immutable dense rational matrix."""

    __slots__ = ('rows', 'cols', '_data')

    def __init__(self, rows: int, cols: int, data: Optional[Sequence[Sequence]] = None):
        if rows < 0 or cols < 0:
            raise DeskError(INVALID_INPUT, f"negative matrix shape {rows}x{cols}")
        if data is None:
            grid = tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))
        else:
            grid = tuple(tuple(Fraction(x) for x in row) for row in data)
            if len(grid) != rows or any(len(row) != cols for row in grid):
                raise DeskError(INVALID_INPUT, f"entry count does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = grid

    @classmethod
    def from_rows(cls, data: Sequence[Sequence], cols: Optional[int] = None) -> 'Matrix':
        data = [list(row) for row in data]
        width = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), width, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'Matrix':
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> 'Matrix':
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> 'Matrix':
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(rows, len(columns), data)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> Fraction:
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(self._data[i][j] for i in range(self.rows))

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self._data]

    def transpose(self) -> 'Matrix':
        return Matrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def apply(self, vector: Sequence) -> Vector:
        if len(vector) != self.cols:
            raise DeskError(INVALID_INPUT, f"vector of length {len(vector)} against {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(row, vector) if a and b), Fraction(0)) for row in self._data)

    def scale(self, factor) -> 'Matrix':
        factor = Fraction(factor)
        return Matrix(self.rows, self.cols, [[factor * x for x in row] for row in self._data])

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        if self.cols != other.rows:
            raise DeskError(INVALID_INPUT, f"cannot multiply {self.shape} by {other.shape}")
        other_cols = [other.column(j) for j in range(other.cols)]
        data = [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in other_cols]
                for row in self._data]
        return Matrix(self.rows, other.cols, data)

    def __add__(self, other: 'Matrix') -> 'Matrix':
        if self.shape != other.shape:
            raise DeskError(INVALID_INPUT, f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)])

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"

    def kron(self, other: 'Matrix') -> 'Matrix':
        """Kronecker product; row (i, k) ↦ i*other.rows + k, likewise for columns."""
        data = []
        for i in range(self.rows):
            for k in range(other.rows):
                data.append([self._data[i][j] * other._data[k][l]
                             for j in range(self.cols) for l in range(other.cols)])
        return Matrix(self.rows * other.rows, self.cols * other.cols, data)

    @staticmethod
    def vstack(blocks: Sequence['Matrix'], cols: int) -> 'Matrix':
        data = [row for block in blocks for row in block._data]
        return Matrix(len(data), cols, data)


def rref(m: Matrix) -> Tuple[List[List[Fraction]], List[int]]:
    """
    Reduced row echelon form by exact Gauss-Jordan elimination.

    Returns:
        tuple: (nonzero rows of the reduced form, pivot column per row)
    """
    grid = m.to_lists()
    pivots: List[int] = []
    row = 0
    for col in range(m.cols):
        if row >= m.rows:
            break
        pivot = next((r for r in range(row, m.rows) if grid[r][col] != 0), None)
        if pivot is None:
            continue
        grid[row], grid[pivot] = grid[pivot], grid[row]
        lead = grid[row][col]
        if lead != 1:
            grid[row] = [x / lead for x in grid[row]]
        for r in range(m.rows):
            if r != row and grid[r][col] != 0:
                factor = grid[r][col]
                grid[r] = [a - factor * b for a, b in zip(grid[r], grid[row])]
        pivots.append(col)
        row += 1
    return grid[:row], pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def solve(m: Matrix) -> Tuple[int, List[Vector]]:
    """
    Rank and canonical kernel basis of ``m``.

    The kernel vector for free column f has a 1 in position f, zeros in the other free
    columns, and minus the reduced-form entries in the pivot columns.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    kernel = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * m.cols
        vec[free] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][free]
        kernel.append(tuple(vec))
    return len(pivots), kernel


def solve_linear(m: Matrix, rhs: Sequence) -> Optional[Vector]:
    """Particular solution x of m x = rhs with free variables set to zero, or None."""
    if len(rhs) != m.rows:
        raise DeskError(INVALID_INPUT, f"right-hand side of length {len(rhs)} against {m.rows} rows")
    augmented = Matrix(m.rows, m.cols + 1, [list(r) + [b] for r, b in zip(m.to_lists(), rhs)])
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == m.cols:
        return None
    solution = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        solution[p] = reduced[r][m.cols]
    return tuple(solution)


def span_basis(vectors: Sequence[Sequence], length: int) -> List[Vector]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    if not vectors:
        return []
    reduced, _ = rref(Matrix(len(vectors), length, vectors))
    return [tuple(row) for row in reduced]


def reduce_modulo(vector: Sequence, subspace: Sequence[Sequence], length: int) -> Vector:
    """
    Canonical representative of ``vector`` modulo the span of ``subspace``.

    Pivot coordinates of the reduced echelon basis are cleared, so two vectors are
    congruent exactly when their representatives coincide.
    """
    result = [Fraction(x) for x in vector]
    if not subspace:
        return tuple(result)
    reduced, pivots = rref(Matrix(len(subspace), length, subspace))
    for row, p in zip(reduced, pivots):
        if result[p] != 0:
            factor = result[p]
            result = [a - factor * b for a, b in zip(result, row)]
    return tuple(result)
