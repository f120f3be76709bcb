"""
Cartan splitting of a connection valued in a Lie algebra with a reductive splitting
𝔥 ⊕ 𝔭 (iso(2,1) = Lorentz ⊕ translations, or the gravity(λ) family).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict

from src.algebra import StructureValidator
from src.utils.errors import DeskError, WRONG_LIE_ALGEBRA
from .elements import DeformationSpace, TensorElement
from .maurer_cartan import mc_defect


@dataclass
class CartanSplit:
    """ω + e = α with the curvature and torsion equations of the pair."""

    omega: TensorElement
    e: TensorElement
    curvature: TensorElement
    torsion: TensorElement
    defect: TensorElement

    @property
    def consistent(self) -> bool:
        return self.curvature + self.torsion == self.defect

    @property
    def flat(self) -> bool:
        return self.curvature.is_zero() and self.torsion.is_zero()

    def to_payload(self) -> Dict[str, Any]:
        return {
            'omega': self.omega.to_payload(),
            'e': self.e.to_payload(),
            'curvature': self.curvature.to_payload(),
            'torsion': self.torsion.to_payload(),
            'consistent': self.consistent,
            'flat': self.flat,
        }


def _lie_part(space: DeformationSpace, part) -> Callable:
    dgla = space.dgla
    return lambda key: dgla.split(key[0])[1] in part


def split_cartan(space: DeformationSpace, alpha: TensorElement) -> CartanSplit:
    """
    ω = 𝔥-part and e = 𝔭-part of α, with

        Ω[ω]  = dω + ½[ω,ω] + ½π_𝔥[e,e]
        d_ω e = de + [ω,e] + ½π_𝔭[e,e]

    The [e,e] terms vanish for iso(2,1). Ω[ω] + d_ω e equals mc_defect(α) term by term.

    Raises:
        DeskError: WRONG_LIE_ALGEBRA if the Lie factor declares no valid splitting
    """
    lie = space.dgla.lie
    report = StructureValidator.validate_splitting(lie)
    if lie.splitting is None or not report.ok:
        raise DeskError(WRONG_LIE_ALGEBRA, f"{lie.name} has no reductive splitting",
                        {'report': report.to_dict()})
    alpha.require_degree(1, 'connection')
    in_h = _lie_part(space, set(lie.splitting[0]))
    in_p = _lie_part(space, set(lie.splitting[1]))
    half = Fraction(1, 2)

    omega = alpha.project(in_h)
    e = alpha.project(in_p)
    ee = space.bracket(e, e)
    curvature = space.d(omega) + space.bracket(omega, omega).scale(half) + ee.project(in_h).scale(half)
    torsion = space.d(e) + space.bracket(omega, e) + ee.project(in_p).scale(half)
    result = CartanSplit(omega, e, curvature, torsion, mc_defect(space, alpha))
    if not result.consistent:
        raise DeskError(WRONG_LIE_ALGEBRA, "curvature and torsion do not add up to the MC defect",
                        {'defect': result.defect.to_payload()})
    return result
