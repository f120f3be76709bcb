"""
Graded vector spaces and cochain complexes over ℚ.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.utils.errors import ComplexNotClosedError, DeskError, INVALID_INPUT
from src.utils.logging import logger
from .matrix import Matrix, rank


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finitely many graded components, each an ordered tuple of basis labels."""

    components: Mapping[int, Tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        normalized = {}
        for degree, labels in self.components.items():
            labels = tuple(str(label) for label in labels)
            if len(set(labels)) != len(labels):
                raise DeskError(INVALID_INPUT, f"duplicate basis labels in degree {degree}")
            normalized[int(degree)] = labels
        object.__setattr__(self, 'components', dict(sorted(normalized.items())))

    @classmethod
    def from_dims(cls, dims: Mapping[int, int], prefix: str = 'e') -> 'GradedVectorSpace':
        return cls({d: tuple(f"{prefix}{d}_{i}" for i in range(n)) for d, n in dims.items()})

    def dim(self, degree: int) -> int:
        return len(self.components.get(degree, ()))

    def degrees(self) -> List[int]:
        return list(self.components)

    def total_dim(self) -> int:
        return sum(len(v) for v in self.components.values())


class CochainComplex:
    """
    Differentials ``d^n`` map degree n to degree n+1 and are stored as
    ``dim(n+1) × dim(n)`` matrices. Missing differentials are zero.
    """

    def __init__(self, spaces: GradedVectorSpace, differentials: Optional[Mapping[int, Matrix]] = None):
        self.spaces = spaces
        self.differentials: Dict[int, Matrix] = {}
        for degree, matrix in (differentials or {}).items():
            expected = (spaces.dim(degree + 1), spaces.dim(degree))
            if matrix.shape != expected:
                raise DeskError(
                    INVALID_INPUT,
                    f"differential in degree {degree} has shape {matrix.shape}, expected {expected}",
                    {'degree': degree},
                )
            self.differentials[degree] = matrix

    def differential(self, degree: int) -> Matrix:
        if degree in self.differentials:
            return self.differentials[degree]
        return Matrix.zeros(self.spaces.dim(degree + 1), self.spaces.dim(degree))

    def degrees(self) -> List[int]:
        return self.spaces.degrees()

    def first_unclosed_degree(self) -> Optional[int]:
        """Lowest n with d^{n+1} ∘ d^n ≠ 0, or None."""
        for degree in self.degrees():
            if degree not in self.differentials or (degree + 1) not in self.differentials:
                continue
            if not (self.differentials[degree + 1] @ self.differentials[degree]).is_zero():
                return degree
        return None

    def verify_closed(self) -> None:
        degree = self.first_unclosed_degree()
        if degree is not None:
            raise ComplexNotClosedError(degree)


def cohomology_dims(complex_: CochainComplex) -> Dict[int, int]:
    """
    dim H^n = dim ker d^n − rank d^{n−1} for every degree carrying a component.

    Raises:
        ComplexNotClosedError: when some composite of differentials is nonzero
    """
    complex_.verify_closed()
    ranks = {d: rank(m) for d, m in complex_.differentials.items()}
    dims = {}
    for degree in complex_.degrees():
        kernel = complex_.spaces.dim(degree) - ranks.get(degree, 0)
        dims[degree] = kernel - ranks.get(degree - 1, 0)
    logger.debug(f"cohomology dims {dims}")
    return dims
