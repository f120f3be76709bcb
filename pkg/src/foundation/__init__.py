"""
Exact rational linear algebra, graded vector spaces and cochain complexes.
"""

from .matrix import (Matrix, Vector, to_vector, rref, rank, solve, solve_linear,
                     span_basis, reduce_modulo)
from .sparse import add_into, scaled, combine, cleaned, to_dense, from_dense, parity_sign
from .complexes import GradedVectorSpace, CochainComplex, cohomology_dims

__all__ = [
    'Matrix', 'Vector', 'to_vector', 'rref', 'rank', 'solve', 'solve_linear',
    'span_basis', 'reduce_modulo', 'GradedVectorSpace', 'CochainComplex',
    'cohomology_dims', 'add_into', 'scaled', 'combine', 'cleaned', 'to_dense',
    'from_dense', 'parity_sign'
]
