"""
Chevalley–Eilenberg cochain and chain complexes with module coefficients.

Wedge basis: strictly increasing index tuples in lexicographic order. The basis of
degree n is (I, b) for wedge I and module basis vector b, flattened I-major.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple

from src.algebra import LieAlgebra, LieModule, StructureValidator
from src.foundation import CochainComplex, GradedVectorSpace, Matrix, cohomology_dims, parity_sign, rank
from src.config import Config
from src.utils.errors import DeskError, BUDGET_EXCEEDED, INVALID_INPUT
from src.utils.logging import logger
from src.utils.parallel import parallel_map

Wedge = Tuple[int, ...]


class Direction(str, Enum):
    COHOMOLOGY = 'cohomology'
    HOMOLOGY = 'homology'


@dataclass(frozen=True)
class CEComplexSpec:
    """A Lie algebra, a module (trivial 1-dimensional by default) and a direction."""

    lie: LieAlgebra
    module: Optional[LieModule] = None
    direction: Direction = Direction.COHOMOLOGY
    max_degree: Optional[int] = None

    @property
    def coefficients(self) -> LieModule:
        return self.module if self.module is not None else LieModule.trivial(self.lie)

    @property
    def top(self) -> int:
        top = self.lie.dim if self.max_degree is None else self.max_degree
        if top < 0 or top > self.lie.dim:
            raise DeskError(INVALID_INPUT, f"max_degree {top} outside 0..{self.lie.dim}")
        return top


def wedges(dim: int, n: int) -> List[Wedge]:
    return list(combinations(range(dim), n))


def _insert(k: int, rest: Wedge) -> Tuple[int, Optional[Wedge]]:
    """e_k ∧ e_rest as (sign, sorted wedge), or (0, None) when k repeats."""
    if k in rest:
        return 0, None
    before = sum(1 for r in rest if r < k)
    return parity_sign(before), tuple(sorted(rest + (k,)))


def _validated(spec: CEComplexSpec) -> LieModule:
    StructureValidator.require(StructureValidator.validate_lie(spec.lie), f"Lie algebra {spec.lie.name}")
    module = spec.coefficients
    StructureValidator.require(StructureValidator.validate_module(module), f"module {module.name}")
    return module


def _check_size(lie: LieAlgebra, module: LieModule, last: int) -> None:
    limit = Config.MAX_DIMENSION()
    largest = max(comb(lie.dim, n) for n in range(last + 1)) * module.dimension
    if largest > limit:
        raise DeskError(BUDGET_EXCEEDED, f"a CE space of dimension {largest} exceeds max_dimension {limit}",
                        {'size': largest, 'budget': limit})


def _labels(lie: LieAlgebra, module: LieModule, n: int, dual: bool) -> Tuple[str, ...]:
    labels = []
    for wedge in wedges(lie.dim, n):
        mark = '*' if dual else ''
        word = '^'.join(f"{lie.basis[i]}{mark}" for i in wedge) or '1'
        labels.extend(f"{word}|{m}" for m in module.basis)
    return tuple(labels)


def _coboundary(lie: LieAlgebra, module: LieModule, n: int) -> Matrix:
    """δ: Hom(Λⁿ𝔤, M) → Hom(Λⁿ⁺¹𝔤, M)."""
    m = module.dimension
    source = {w: i for i, w in enumerate(wedges(lie.dim, n))}
    targets = wedges(lie.dim, n + 1)
    data = [[Fraction(0)] * (len(source) * m) for _ in range(len(targets) * m)]
    for r, wedge in enumerate(targets):
        for pos, j in enumerate(wedge):
            rest = wedge[:pos] + wedge[pos + 1:]
            column = source[rest]
            sign = parity_sign(pos)
            action = module.action[j]
            for b_out in range(m):
                for b_in in range(m):
                    value = action.entry(b_out, b_in)
                    if value:
                        data[r * m + b_out][column * m + b_in] += sign * value
        for a, c in combinations(range(len(wedge)), 2):
            sign = parity_sign(a + c)
            rest = tuple(x for t, x in enumerate(wedge) if t not in (a, c))
            for k, coefficient in lie.bracket_basis(wedge[a], wedge[c]).items():
                wedge_sign, target = _insert(k, rest)
                if not wedge_sign:
                    continue
                column = source[target]
                for b in range(m):
                    data[r * m + b][column * m + b] += sign * wedge_sign * coefficient
    return Matrix(len(targets) * m, len(source) * m, data)


def _boundary(lie: LieAlgebra, module: LieModule, k: int) -> Matrix:
    """d: M⊗Λᵏ𝔤 → M⊗Λᵏ⁻¹𝔤 with the right action m·x = −x·m."""
    m = module.dimension
    sources = wedges(lie.dim, k)
    target = {w: i for i, w in enumerate(wedges(lie.dim, k - 1))}
    data = [[Fraction(0)] * (len(sources) * m) for _ in range(len(target) * m)]
    for col, wedge in enumerate(sources):
        for pos, j in enumerate(wedge):
            rest = wedge[:pos] + wedge[pos + 1:]
            row = target[rest]
            sign = parity_sign(pos)
            action = module.action[j]
            for b_out in range(m):
                for b_in in range(m):
                    value = action.entry(b_out, b_in)
                    if value:
                        data[row * m + b_out][col * m + b_in] -= sign * value
        for a, c in combinations(range(len(wedge)), 2):
            sign = parity_sign(a + c)
            rest = tuple(x for t, x in enumerate(wedge) if t not in (a, c))
            for idx, coefficient in lie.bracket_basis(wedge[a], wedge[c]).items():
                wedge_sign, image = _insert(idx, rest)
                if not wedge_sign:
                    continue
                row = target[image]
                for b in range(m):
                    data[row * m + b][col * m + b] += sign * wedge_sign * coefficient
    return Matrix(len(target) * m, len(sources) * m, data)


def ce_cochain_complex(spec: CEComplexSpec) -> CochainComplex:
    """
    Hom(Λⁿ𝔤, M) in degrees 0..min(max_degree + 1, dim 𝔤) with the two-sum coboundary.

    Raises:
        ValidationError: when the Lie algebra or module fails its axioms
        ComplexNotClosedError: when δ∘δ ≠ 0
        DeskError: BUDGET_EXCEEDED when a cochain space exceeds max_dimension
    """
    if spec.direction != Direction.COHOMOLOGY:
        raise DeskError(INVALID_INPUT, "ce_cochain_complex needs direction=cohomology")
    module = _validated(spec)
    lie = spec.lie
    last = min(spec.top + 1, lie.dim)
    _check_size(lie, module, last)
    spaces = GradedVectorSpace({n: _labels(lie, module, n, dual=True) for n in range(last + 1)})
    degrees = list(range(last))
    matrices = parallel_map(lambda n: _coboundary(lie, module, n), degrees)
    complex_ = CochainComplex(spaces, dict(zip(degrees, matrices)))
    complex_.verify_closed()
    logger.debug(f"CE cochains of {lie.name} with {module.name}: dims {[spaces.dim(n) for n in spaces.degrees()]}")
    return complex_


def ce_chain_complex(spec: CEComplexSpec) -> CochainComplex:
    """M⊗Λᵏ𝔤 placed in cohomological degree −k so the boundary raises degree."""
    if spec.direction != Direction.HOMOLOGY:
        raise DeskError(INVALID_INPUT, "ce_chain_complex needs direction=homology")
    module = _validated(spec)
    lie = spec.lie
    last = min(spec.top + 1, lie.dim)
    _check_size(lie, module, last)
    spaces = GradedVectorSpace({-k: _labels(lie, module, k, dual=False) for k in range(last + 1)})
    ks = list(range(1, last + 1))
    matrices = parallel_map(lambda k: _boundary(lie, module, k), ks)
    complex_ = CochainComplex(spaces, {-k: mat for k, mat in zip(ks, matrices)})
    complex_.verify_closed()
    return complex_


def lie_cohomology(spec: CEComplexSpec) -> Dict[int, int]:
    dims = cohomology_dims(ce_cochain_complex(spec))
    return {n: dims[n] for n in range(spec.top + 1)}


def lie_homology(spec: CEComplexSpec) -> Dict[int, int]:
    dims = cohomology_dims(ce_chain_complex(spec))
    return {k: dims[-k] for k in range(spec.top + 1)}


def invariant_dimension(module: LieModule) -> int:
    """dim of {m : x·m = 0 for all x}, computed directly from the stacked action."""
    stacked = Matrix.vstack(module.action, module.dimension)
    return module.dimension - rank(stacked)
