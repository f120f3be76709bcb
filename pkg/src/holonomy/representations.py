"""
Representations of surface groups in finite groups: the Hom-set, its conjugation
orbits, and the transport groupoid of the associated flat bundle.
"""
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.algebra import FiniteGroup
from src.config import Config
from src.stacks import ActionGroupoid, GroupoidFunctor, pi0
from src.utils.errors import DeskError, BUDGET_EXCEEDED, INVALID_INPUT
from src.utils.logging import logger
from src.utils.parallel import parallel_map


def surface_relation(group: FiniteGroup, elements: Sequence[int]) -> int:
    """∏ᵢ AᵢBᵢAᵢ⁻¹Bᵢ⁻¹ for (A₁, B₁, …, A_g, B_g)."""
    result = group.identity
    for i in range(0, len(elements), 2):
        result = group.multiply(result, group.commutator(elements[i], elements[i + 1]))
    return result


@dataclass(frozen=True, order=True)
class SurfaceRep:
    genus: int
    elements: Tuple[int, ...]

    def is_valid(self, group: FiniteGroup) -> bool:
        return len(self.elements) == 2 * self.genus and surface_relation(group, self.elements) == group.identity

    def labels(self, group: FiniteGroup) -> List[str]:
        return [group.labels[a] for a in self.elements]

    @classmethod
    def parse(cls, tokens: Sequence[str], group: FiniteGroup) -> 'SurfaceRep':
        """Element labels or indices, A₁ B₁ … A_g B_g."""
        if not tokens or len(tokens) % 2:
            raise DeskError(INVALID_INPUT, f"a surface representation needs 2g elements, got {len(tokens)}")
        return cls(len(tokens) // 2, tuple(group.element(t) for t in tokens))


def _check_enumeration(genus: int, group: FiniteGroup, budget: Optional[int]) -> None:
    if genus < 1:
        raise DeskError(INVALID_INPUT, f"genus must be at least 1, got {genus}")
    budget = Config.ENUMERATION_BUDGET() if budget is None else budget
    size = group.order ** (2 * genus)
    if size > budget:
        raise DeskError(BUDGET_EXCEEDED, f"|{group.name}|^{2 * genus} = {size} exceeds the enumeration budget {budget}",
                        {'size': size, 'budget': budget})


def _shard(group: FiniteGroup, genus: int, first: int) -> List[Tuple[int, ...]]:
    found = []
    for rest in product(range(group.order), repeat=2 * genus - 1):
        elements = (first,) + rest
        if surface_relation(group, elements) == group.identity:
            found.append(elements)
    return found


@dataclass
class RepEnumeration:
    genus: int
    group: FiniteGroup
    reps: List[SurfaceRep]

    @property
    def count(self) -> int:
        return len(self.reps)

    def to_payload(self, listing: bool = False) -> Dict[str, Any]:
        payload = {'genus': self.genus, 'group': self.group.name, 'count': self.count}
        if listing:
            payload['reps'] = [r.labels(self.group) for r in self.reps]
        return payload


def enumerate_reps(genus: int, group: FiniteGroup, threads: Optional[int] = None,
                   budget: Optional[int] = None) -> RepEnumeration:
    """
    Every 2g-tuple satisfying the surface relation, in lexicographic order of
    element indices. Shards by the first coordinate.

    Raises:
        DeskError: BUDGET_EXCEEDED when |G|^{2g} is above the budget
    """
    _check_enumeration(genus, group, budget)
    shards = parallel_map(lambda first: _shard(group, genus, first), range(group.order), threads)
    reps = [SurfaceRep(genus, elements) for shard in shards for elements in shard]
    logger.debug(f"Hom(pi1(genus {genus}), {group.name}): {len(reps)} representations")
    return RepEnumeration(genus, group, reps)


def conjugate_rep(rep: SurfaceRep, group: FiniteGroup, by: int) -> SurfaceRep:
    return SurfaceRep(rep.genus, tuple(group.conjugate(a, by) for a in rep.elements))


@dataclass
class ConjugationClasses:
    genus: int
    group: FiniteGroup
    representatives: List[SurfaceRep]
    sizes: List[int]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def to_payload(self) -> Dict[str, Any]:
        return {
            'genus': self.genus,
            'group': self.group.name,
            'count': self.count,
            'classes': [{'representative': r.labels(self.group), 'size': s}
                        for r, s in zip(self.representatives, self.sizes)],
        }


def conj_classes_of_reps(genus: int, group: FiniteGroup, threads: Optional[int] = None,
                         budget: Optional[int] = None) -> ConjugationClasses:
    """Orbits under simultaneous conjugation, each represented by its least tuple."""
    enumeration = enumerate_reps(genus, group, threads, budget)
    seen = set()
    representatives, sizes = [], []
    for rep in enumeration.reps:
        if rep in seen:
            continue
        orbit = {conjugate_rep(rep, group, g) for g in range(group.order)}
        seen.update(orbit)
        representatives.append(rep)
        sizes.append(len(orbit))
    return ConjugationClasses(genus, group, representatives, sizes)


def image_subgroup(rep: SurfaceRep, group: FiniteGroup) -> Tuple[int, ...]:
    return group.subgroup(rep.elements)


def rep_to_bundle(rep: SurfaceRep, group: FiniteGroup) -> ActionGroupoid:
    """
    Transport groupoid on the fibre G: the generators act by g ↦ ρ(γ)⁻¹·g, so the
    morphisms are left multiplications by Im ρ and π₀ is Im ρ\\G.

    Raises:
        DeskError: INVALID_INPUT if the tuple violates the surface relation
    """
    if not rep.is_valid(group):
        raise DeskError(INVALID_INPUT, f"{rep.labels(group)} does not satisfy the surface relation in {group.name}")
    return ActionGroupoid(group, image_subgroup(rep, group), name=f"P({','.join(rep.labels(group))})")


def conjugation_functor(rep: SurfaceRep, group: FiniteGroup, by: int) -> GroupoidFunctor:
    """P_ρ → P_{c⁻¹ρc} sending g ↦ c⁻¹·g and (k, g) ↦ (c⁻¹kc, c⁻¹g)."""
    source = rep_to_bundle(rep, group)
    target = rep_to_bundle(conjugate_rep(rep, group, by), group)
    c_inv = group.inv(by)
    return GroupoidFunctor(source, target,
                           lambda g: group.multiply(c_inv, g),
                           lambda m: (group.conjugate(m[0], by), group.multiply(c_inv, m[1])),
                           name=f"conj({group.labels[by]})")


def bundle_summary(rep: SurfaceRep, group: FiniteGroup) -> Dict[str, Any]:
    bundle = rep_to_bundle(rep, group)
    components = pi0(bundle)
    return {
        'genus': rep.genus,
        'group': group.name,
        'rep': rep.labels(group),
        'image_order': len(bundle.acting),
        'components': components.count,
        'representatives': components.representatives,
    }
