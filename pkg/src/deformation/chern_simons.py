"""
Chern–Simons functional ∫⟨α, dα⟩ + ⅓⟨α, [α, α]⟩ on a cyclic DGLA and its exact gradient.
"""
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Union

from src.algebra import DGLA, InvariantPairing, StructureValidator
from src.foundation import add_into
from src.utils.errors import DeskError, NO_INTEGRATION, TYPE_MISMATCH, WRONG_TOP_DEGREE
from .elements import TensorElement

Vector = Dict[int, Fraction]
OFFSETS = (Fraction(1), Fraction(1, 2), Fraction(1, 4))


class CyclicStructure:
    """
    A DGLA whose Lie factor carries an invariant pairing and whose GCA integrates over
    its top degree 3.

    Raises:
        DeskError: NO_INTEGRATION, WRONG_TOP_DEGREE
        ValidationError: if the pairing is not invariant
    """

    def __init__(self, dgla: DGLA, pairing: InvariantPairing):
        gca = dgla.gca
        if not gca.has_integration:
            raise DeskError(NO_INTEGRATION, f"{gca.name} has no integration functional")
        if gca.top_degree() != 3:
            raise DeskError(WRONG_TOP_DEGREE, f"{gca.name} has top degree {gca.top_degree()}, expected 3",
                            {'top_degree': gca.top_degree()})
        if pairing.base is not dgla.lie and pairing.base.basis != dgla.lie.basis:
            raise DeskError(TYPE_MISMATCH, "pairing lives on a different Lie algebra")
        StructureValidator.require(StructureValidator.validate_pairing(pairing), f"pairing {pairing.name}")
        self.dgla = dgla
        self.pairing = pairing
        self.coordinates: List[int] = dgla.component(1)

    def pair(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Fraction:
        """∫⟨u, v⟩ with products across the GCA factor and the pairing across the Lie factor."""
        gca = self.dgla.gca
        total = Fraction(0)
        for s, a in u.items():
            p, i = self.dgla.split(s)
            for t, b in v.items():
                q, j = self.dgla.split(t)
                g = self.pairing.pair_basis(i, j)
                if g:
                    total += a * b * g * gca.integrate(gca.product_basis(p, q))
        return total

    def as_vector(self, alpha: Union[TensorElement, Mapping[int, Fraction]]) -> Vector:
        vector = alpha.dgla_vector() if isinstance(alpha, TensorElement) else {k: Fraction(v) for k, v in alpha.items() if v}
        wrong = [self.dgla.label(k) for k in vector if self.dgla.degree(k) != 1]
        if wrong:
            raise DeskError(TYPE_MISMATCH, "Chern–Simons needs a degree-1 element", {'terms': wrong})
        return vector


def cs_value(c: CyclicStructure, alpha) -> Fraction:
    """∫(⟨α, dα⟩ + ⅓⟨α, [α, α]⟩)."""
    u = c.as_vector(alpha)
    dgla = c.dgla
    return c.pair(u, dgla.d(u)) + Fraction(1, 3) * c.pair(u, dgla.bracket(u, u))


def cs_gradient(c: CyclicStructure, alpha) -> Vector:
    """
    Exact partial derivatives of cs_value in the degree-1 coordinates, by expanding
    the bilinear and trilinear terms in each coordinate direction.
    """
    u = c.as_vector(alpha)
    dgla = c.dgla
    du = dgla.d(u)
    uu = dgla.bracket(u, u)
    gradient: Vector = {}
    for k in c.coordinates:
        e = {k: Fraction(1)}
        cross = dgla.bracket(e, u)
        add_into(cross, dgla.bracket(u, e))
        value = (c.pair(e, du) + c.pair(u, dgla.d(e))
                 + Fraction(1, 3) * (c.pair(e, uu) + c.pair(u, cross)))
        gradient[k] = value
    return gradient


def finite_difference_gradient(c: CyclicStructure, alpha, offsets: Sequence[Fraction] = OFFSETS) -> Vector:
    """
    Symmetric differences D(h) = (CS(α+h e_k) − CS(α−h e_k)) / 2h are polynomial in h²
    for a cubic functional; interpolating D through the offsets and evaluating at
    h² = 0 returns the exact partial derivative.
    """
    u = c.as_vector(alpha)
    squares = [Fraction(h) ** 2 for h in offsets]
    gradient: Vector = {}
    for k in c.coordinates:
        samples = []
        for h in offsets:
            h = Fraction(h)
            plus = add_into(dict(u), {k: h})
            minus = add_into(dict(u), {k: -h})
            samples.append((cs_value(c, plus) - cs_value(c, minus)) / (2 * h))
        value = Fraction(0)
        for i, (s_i, d_i) in enumerate(zip(squares, samples)):
            weight = Fraction(1)
            for j, s_j in enumerate(squares):
                if j != i:
                    weight *= (0 - s_j) / (s_i - s_j)
            value += weight * d_i
        gradient[k] = value
    return gradient


def gradient_is_zero(gradient: Vector) -> bool:
    return all(v == 0 for v in gradient.values())
