"""
Maurer–Cartan defect, tangent space, and order-by-order lifting with obstructions.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from src.algebra import DGLA
from src.foundation import Matrix, Vector, rank, reduce_modulo, solve, solve_linear
from src.utils.errors import DeskError, INVALID_INPUT, PRECONDITION_DEFECT_TOO_LOW, TYPE_MISMATCH
from src.utils.logging import logger
from .artinian import ArtinianAlgebra, dual_numbers
from .elements import DeformationSpace, Key, TensorElement


def mc_defect(space: DeformationSpace, alpha: TensorElement) -> TensorElement:
    """d_tot α + ½[α, α]; zero exactly when α is a Maurer–Cartan element."""
    alpha.require_degree(1, 'Maurer–Cartan candidate')
    return space.d(alpha) + space.bracket(alpha, alpha).scale(Fraction(1, 2))


def bianchi_residual(space: DeformationSpace, alpha: TensorElement) -> TensorElement:
    """d_tot F + [α, F] for F = mc_defect(α); vanishes identically."""
    curvature = mc_defect(space, alpha)
    return space.d(curvature) + space.bracket(alpha, curvature)


@dataclass
class TangentSpace:
    """First-order data of the MC functor: cocycles Z¹ and cohomology H¹."""

    z1_dim: int
    h1_dim: int
    z1_basis: List[Dict[int, Fraction]]

    def to_payload(self, dgla: DGLA) -> Dict[str, Any]:
        return {
            'z1_dim': self.z1_dim,
            'h1_dim': self.h1_dim,
            'z1_basis': [dgla.format(v) for v in self.z1_basis],
        }


def mc_tangent(dgla: DGLA) -> TangentSpace:
    """Z¹ = ker(d: 𝔤¹ → 𝔤²), H¹ = Z¹ / d(𝔤⁰)."""
    degree_one = dgla.component(1)
    if not degree_one:
        return TangentSpace(0, 0, [])
    _, kernel = solve(dgla.differential_matrix(1))
    boundaries = rank(dgla.differential_matrix(0))
    basis = [{degree_one[i]: v for i, v in enumerate(vec) if v} for vec in kernel]
    return TangentSpace(len(kernel), len(kernel) - boundaries, basis)


def _linear_matrix(space: DeformationSpace, columns: List[Key], rows: List[Key], image) -> Matrix:
    position = {key: r for r, key in enumerate(rows)}
    data = [[Fraction(0)] * len(columns) for _ in rows]
    for c, key in enumerate(columns):
        for target, value in image(space.element({key: 1})).terms.items():
            if target in position:
                data[position[target]][c] = value
    return Matrix(len(rows), len(columns), data)


def mc_set_dual_numbers(dgla: DGLA) -> List[TensorElement]:
    """
    Basis of the MC set over k[ε]/ε², which is a linear subspace because ε² = 0
    kills the bracket.
    """
    space = DeformationSpace(dgla, dual_numbers())
    columns = space.basis_in_degree(1)
    rows = space.basis_in_degree(2)
    matrix = _linear_matrix(space, columns, rows, lambda e: mc_defect(space, e))
    _, kernel = solve(matrix)
    return [space.element({columns[i]: v for i, v in enumerate(vec)}) for vec in kernel]


@dataclass
class LiftResult:
    """Outcome of one lifting step from 𝔪^k to 𝔪^(k+1)."""

    order: int
    lifted: bool
    element: TensorElement
    correction: Optional[TensorElement] = None
    obstruction: Optional[TensorElement] = None
    defect: Optional[TensorElement] = None

    def to_payload(self) -> Dict[str, Any]:
        payload = {
            'order': self.order,
            'lifted': self.lifted,
            'element': self.element.to_payload(),
        }
        if self.correction is not None:
            payload['correction'] = self.correction.to_payload()
        if self.obstruction is not None:
            payload['obstruction'] = self.obstruction.to_payload()
        if self.defect is not None:
            payload['defect'] = self.defect.to_payload()
        return payload


def _require_nilpotent(space: DeformationSpace) -> ArtinianAlgebra:
    coefficients = space.coefficients
    if coefficients.is_ground or coefficients.nilpotency_order is None:
        raise DeskError(TYPE_MISMATCH, "this operation needs nilpotent coefficients")
    if space.simplex:
        raise DeskError(TYPE_MISMATCH, "this operation works on 0-simplices")
    return coefficients


def mc_lift(space: DeformationSpace, alpha: TensorElement, k: int) -> LiftResult:
    """
    Lift α, whose defect lies in 𝔤⊗𝔪^k, to α − β with defect in 𝔤⊗𝔪^(k+1).

    The defect's power-k part D_k is tested against the image of d_tot on the power-k
    degree-1 piece. When D_k is exact, β is the canonical echelon preimage; otherwise
    the obstruction is returned as the canonical representative of D_k modulo that
    image.

    Raises:
        DeskError: PRECONDITION_DEFECT_TOO_LOW if the defect is not in 𝔪^k
    """
    coefficients = _require_nilpotent(space)
    if k < 1:
        raise DeskError(INVALID_INPUT, "lifting order k must be at least 1")
    defect = mc_defect(space, alpha)
    if not defect.in_power(k):
        raise DeskError(PRECONDITION_DEFECT_TOO_LOW,
                        f"defect is not in m^{k}", {'defect_order': defect.order(), 'k': k})
    if k >= coefficients.nilpotency_order or defect.is_zero():
        return LiftResult(order=k, lifted=True, element=alpha, correction=space.zero(), defect=defect)

    leading = defect.project_power(k)
    columns = space.basis_in_degree(1, powers=[k])
    rows = space.basis_in_degree(2, powers=[k])
    position = {key: r for r, key in enumerate(rows)}
    matrix = _linear_matrix(space, columns, rows, lambda e: space.d(e).project_power(k))
    target: Vector = tuple(leading.terms.get(key, Fraction(0)) for key in rows)
    if any(key not in position for key in leading.terms):
        raise DeskError(TYPE_MISMATCH, "defect has terms outside total degree 2")

    image = [matrix.column(c) for c in range(matrix.cols)]
    representative = reduce_modulo(target, image, len(rows))
    if any(representative):
        obstruction = space.element({rows[r]: v for r, v in enumerate(representative) if v})
        logger.info(f"lift obstructed at order {k}: {obstruction}")
        return LiftResult(order=k, lifted=False, element=alpha, obstruction=obstruction, defect=defect)

    solution = solve_linear(matrix, target)
    correction = space.element({columns[c]: v for c, v in enumerate(solution) if v})
    lifted = alpha - correction
    new_defect = mc_defect(space, lifted)
    if not new_defect.in_power(k + 1):
        raise DeskError(INVALID_INPUT, "coefficient differential does not preserve the filtration",
                        {'order': k})
    return LiftResult(order=k, lifted=True, element=lifted, correction=correction, defect=new_defect)


def mc_solve(space: DeformationSpace, alpha: TensorElement) -> List[LiftResult]:
    """Repeat ``mc_lift`` from the defect's own order until it vanishes or is obstructed."""
    coefficients = _require_nilpotent(space)
    steps: List[LiftResult] = []
    current = alpha
    while True:
        defect = mc_defect(space, current)
        order = defect.order()
        if order is None or order >= coefficients.nilpotency_order:
            return steps
        step = mc_lift(space, current, order)
        steps.append(step)
        if not step.lifted:
            return steps
        current = step.element
