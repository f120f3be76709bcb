"""
Cosimplicial groupoids truncated at level 2.
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING

from src.algebra.validators import ValidationReport
from src.utils.logging import logger

if TYPE_CHECKING:
    from src.stacks.groupoids import FiniteGroupoid, GroupoidFunctor


@dataclass
class CosimplicialGroupoid:
    """X₀ ⇉ X₁ ⇶ X₂ with cofaces d_i^n : X_{n−1} → X_n and s₀⁰ : X₁ → X₀."""

    x0: 'FiniteGroupoid'
    x1: 'FiniteGroupoid'
    x2: 'FiniteGroupoid'
    d0_1: 'GroupoidFunctor'
    d1_1: 'GroupoidFunctor'
    d0_2: 'GroupoidFunctor'
    d1_2: 'GroupoidFunctor'
    d2_2: 'GroupoidFunctor'
    s0_0: 'GroupoidFunctor'
    name: str = 'diagram'

    def functors(self):
        return {
            'd0_1': (self.d0_1, self.x0, self.x1),
            'd1_1': (self.d1_1, self.x0, self.x1),
            'd0_2': (self.d0_2, self.x1, self.x2),
            'd1_2': (self.d1_2, self.x1, self.x2),
            'd2_2': (self.d2_2, self.x1, self.x2),
            's0_0': (self.s0_0, self.x1, self.x0),
        }


def validate_cosimplicial(diagram: CosimplicialGroupoid) -> ValidationReport:
    """
    Endpoints of every functor, then on all of X₀:
    d₁²d₀¹ = d₀²d₀¹, d₂²d₀¹ = d₀²d₁¹, d₂²d₁¹ = d₁²d₁¹ and s₀⁰d₀¹ = s₀⁰d₁¹ = id.
    """
    from src.stacks.groupoids import GroupoidFunctor

    report = ValidationReport(subject=diagram.name)
    for name, (functor, source, target) in diagram.functors().items():
        report.checked += 1
        if functor.source is not source or functor.target is not target:
            report.add('endpoints', functor=name)
    if not report.ok:
        return report
    d = diagram
    identity = GroupoidFunctor.identity(d.x0)
    relations = {
        'd1_2 d0_1 = d0_2 d0_1': (d.d1_2.after(d.d0_1), d.d0_2.after(d.d0_1)),
        'd2_2 d0_1 = d0_2 d1_1': (d.d2_2.after(d.d0_1), d.d0_2.after(d.d1_1)),
        'd2_2 d1_1 = d1_2 d1_1': (d.d2_2.after(d.d1_1), d.d1_2.after(d.d1_1)),
        's0_0 d0_1 = id': (d.s0_0.after(d.d0_1), identity),
        's0_0 d1_1 = id': (d.s0_0.after(d.d1_1), identity),
    }
    for relation, (left, right) in relations.items():
        report.checked += 1
        difference = left.agrees_with(right)
        if difference:
            report.add('cosimplicial_identity', relation=relation, where=difference)
    if not report.ok:
        logger.warning(f"cosimplicial diagram {diagram.name}: {len(report.issues)} violations")
    return report


def constant_diagram(groupoid: 'FiniteGroupoid') -> CosimplicialGroupoid:
    """Every level the same groupoid, every functor the identity."""
    from src.stacks.groupoids import GroupoidFunctor

    identity = GroupoidFunctor.identity(groupoid)
    return CosimplicialGroupoid(groupoid, groupoid, groupoid, identity, identity,
                                identity, identity, identity, identity, name=f"const({groupoid.name})")
