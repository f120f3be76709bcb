"""
Čech diagrams of prestacks, the level-2 homotopy limit, and the descent checker.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.simplicial import CosimplicialGroupoid, validate_cosimplicial
from src.utils.errors import DeskError, INVALID_DIAGRAM, MISSING_PULLBACK, VALIDATION_ERROR
from src.utils.logging import logger
from src.utils.parallel import parallel_map
from src.algebra import StructureValidator
from .groupoids import (FiniteGroupoid, GroupoidFunctor, ProductGroupoid, WeakEquivalenceVerdict,
                        is_weak_equivalence, pi0)
from .prestacks import Prestack, validate_prestack
from .sites import Site, validate_site

Slot = Tuple[Tuple[int, ...], str]


class SlotFunctor(GroupoidFunctor):
    """
    Functor between Čech levels: target slot t takes the factor at source slot
    ``sources[t]`` and restricts it along ``restrictions[t]``.
    """

    def __init__(self, source: ProductGroupoid, target: ProductGroupoid,
                 sources: Sequence[int], restrictions: Sequence[GroupoidFunctor], name: str):
        self.sources = tuple(sources)
        self.restrictions = tuple(restrictions)
        super().__init__(source, target, self._objects, self._morphisms, name=name)

    def _objects(self, x):
        return tuple(r.obj(x[s]) for s, r in zip(self.sources, self.restrictions))

    def _morphisms(self, m):
        return tuple(r.mor(m[s]) for s, r in zip(self.sources, self.restrictions))


def _level_slots(site: Site, members: Sequence[str]) -> List[List[Slot]]:
    k = len(members)
    level0 = [((i,), members[i]) for i in range(k)]
    level1 = [((i, j), piece) for i, j in product(range(k), repeat=2)
              for piece in site.pullback(members[i], members[j])]
    level2 = []
    for (i, j), piece in level1:
        for l in range(k):
            for inner in site.pullback(piece, members[l]):
                level2.append(((i, j, l), inner))
    return [level0, level1, level2]


def _slot_functor(site: Site, prestack: Prestack, source: ProductGroupoid, target: ProductGroupoid,
                  source_slots: List[Slot], target_slots: List[Slot], face, name: str) -> SlotFunctor:
    indices, restrictions = [], []
    for index, piece in target_slots:
        wanted = face(index)
        found = [s for s, (idx, q) in enumerate(source_slots) if idx == wanted and site.below(piece, q)]
        if not found:
            raise DeskError(MISSING_PULLBACK, f"{piece} lies in no piece of the overlap {wanted}",
                            {'slot': list(index), 'piece': piece})
        # overlap pieces from opens are disjoint; hand-written ones may nest, so take the lowest label
        s = min(found, key=lambda t: source_slots[t][1])
        indices.append(s)
        restrictions.append(prestack.restriction(piece, source_slots[s][1]))
    return SlotFunctor(source, target, indices, restrictions, name)


def cech_diagram(site: Site, u: str, family: Sequence[str], prestack: Prestack) -> CosimplicialGroupoid:
    """
    Level n is the product of X over the pieces of the (n+1)-fold overlaps of the
    cover members, ordered index tuples including repeated indices. Cofaces drop one
    index; s₀⁰ reads the diagonal overlap U_i ×_U U_i = U_i.

    Raises:
        DeskError: MISSING_PULLBACK when an overlap is not recorded
    """
    members = tuple(family)
    for m in members:
        if not site.below(m, u):
            raise DeskError(INVALID_DIAGRAM, f"{m} is not over {u}")
    slots = _level_slots(site, members)
    levels = [ProductGroupoid([prestack.at(piece) for _, piece in level], name=f"X{n}")
              for n, level in enumerate(slots)]

    def drop(position):
        return lambda index: index[:position] + index[position + 1:]

    def functor(n, position, name):
        return _slot_functor(site, prestack, levels[n - 1], levels[n], slots[n - 1], slots[n], drop(position), name)

    s0 = _slot_functor(site, prestack, levels[1], levels[0], slots[1], slots[0],
                       lambda index: (index[0], index[0]), 's0_0')
    diagram = CosimplicialGroupoid(
        levels[0], levels[1], levels[2],
        functor(1, 0, 'd0_1'), functor(1, 1, 'd1_1'),
        functor(2, 0, 'd0_2'), functor(2, 1, 'd1_2'), functor(2, 2, 'd2_2'),
        s0, name=f"Cech({u}; {', '.join(members)})",
    )
    diagram.slots = slots
    return diagram


class HolimGroupoid(FiniteGroupoid):
    """
    Objects (x, h): x ∈ X₀, h : d₁¹x → d₀¹x in X₁ with s₀⁰(h) = id_x and
    d₀²(h) ∘ d₂²(h) = d₁²(h). Morphisms (x,h) → (x',h') are f : x → x' with
    h' ∘ d₁¹(f) = d₀¹(f) ∘ h, stored as (source, target, f).
    """

    def __init__(self, diagram: CosimplicialGroupoid):
        self.diagram = diagram
        self.name = f"holim {diagram.name}"
        d = diagram
        found = []
        for x in d.x0.objects():
            identity = d.x0.identity(x)
            for h in d.x1.hom(d.d1_1.obj(x), d.d0_1.obj(x)):
                if d.s0_0.mor(h) != identity:
                    continue
                if d.x2.compose(d.d0_2.mor(h), d.d2_2.mor(h)) == d.d1_2.mor(h):
                    found.append((x, h))
        self._objects = tuple(found)
        self._members = set(found)

    def _compatible(self, a, b, f) -> bool:
        d = self.diagram
        (_, h), (_, h2) = a, b
        return d.x1.compose(h2, d.d1_1.mor(f)) == d.x1.compose(d.d0_1.mor(f), h)

    def objects(self):
        return self._objects

    def hom(self, a, b):
        return [(a, b, f) for f in self.diagram.x0.hom(a[0], b[0]) if self._compatible(a, b, f)]

    def connected(self, a, b) -> bool:
        return any(self._compatible(a, b, f) for f in self.diagram.x0.hom(a[0], b[0]))

    def source(self, m):
        return m[0]

    def target(self, m):
        return m[1]

    def compose(self, g, f):
        return (f[0], g[1], self.diagram.x0.compose(g[2], f[2]))

    def identity(self, a):
        return (a, a, self.diagram.x0.identity(a[0]))

    def inverse(self, m):
        return (m[1], m[0], self.diagram.x0.inverse(m[2]))

    def object_label(self, a) -> str:
        return f"{self.diagram.x0.object_label(a[0])}|{self.diagram.x1.morphism_label(a[1])}"

    def morphism_label(self, m) -> str:
        return self.diagram.x0.morphism_label(m[2])


def holim2(diagram: CosimplicialGroupoid) -> HolimGroupoid:
    """
    Raises:
        DeskError: INVALID_DIAGRAM if the cosimplicial identities fail
    """
    report = validate_cosimplicial(diagram)
    if not report.ok:
        raise DeskError(INVALID_DIAGRAM, f"{diagram.name} is not cosimplicial", {'report': report.to_dict()})
    holim = HolimGroupoid(diagram)
    logger.debug(f"{holim.name}: {len(holim.objects())} objects")
    return holim


def comparison_functor(prestack: Prestack, u: str, members: Sequence[str],
                       holim: HolimGroupoid) -> GroupoidFunctor:
    """Ψ: X(U) → holim, restriction to every member with identity transitions."""
    d = holim.diagram
    restrictions = [prestack.restriction(m, u) for m in members]

    def on_objects(a):
        x = tuple(r.obj(a) for r in restrictions)
        return (x, d.x1.identity(d.d1_1.obj(x)))

    def on_morphisms(m):
        src, dst = prestack.at(u).source(m), prestack.at(u).target(m)
        return (on_objects(src), on_objects(dst), tuple(r.mor(m) for r in restrictions))

    return GroupoidFunctor(prestack.at(u), holim, on_objects, on_morphisms, name=f"Psi({u})")


@dataclass
class CoverVerdict:
    object: str
    family: Tuple[str, ...]
    holds: bool
    pi0_value: int
    pi0_holim: int
    verdict: WeakEquivalenceVerdict

    def to_payload(self) -> Dict[str, Any]:
        return {
            'object': self.object,
            'family': list(self.family),
            'holds': self.holds,
            'pi0_value': self.pi0_value,
            'pi0_holim': self.pi0_holim,
            'comparison': self.verdict.to_payload(),
        }


@dataclass
class DescentReport:
    site: str
    prestack: str
    covers: List[CoverVerdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.covers)

    def to_payload(self) -> Dict[str, Any]:
        return {
            'site': self.site,
            'prestack': self.prestack,
            'is_stack': self.ok,
            'covers': [c.to_payload() for c in self.covers],
        }


def check_cover(site: Site, prestack: Prestack, u: str, family: Sequence[str]) -> CoverVerdict:
    diagram = cech_diagram(site, u, family, prestack)
    holim = holim2(diagram)
    verdict = is_weak_equivalence(comparison_functor(prestack, u, family, holim))
    return CoverVerdict(u, tuple(family), verdict.holds, pi0(prestack.at(u)).count, pi0(holim).count, verdict)


def descent_check(site: Site, prestack: Prestack, threads: Optional[int] = None) -> DescentReport:
    """Compare X(U) with the holim of its Čech diagram for every covering family."""
    StructureValidator.require(validate_site(site), f"site {site.name}", VALIDATION_ERROR)
    StructureValidator.require(validate_prestack(prestack), f"prestack {prestack.name}", VALIDATION_ERROR)
    jobs = [(u, family) for u in sorted(site.objects) for family in site.families(u)]
    verdicts = parallel_map(lambda job: check_cover(site, prestack, *job), jobs, threads)
    report = DescentReport(site.name, prestack.name, verdicts)
    failing = [v for v in verdicts if not v.holds]
    if failing:
        logger.info(f"{prestack.name} fails descent on {len(failing)} covers of {site.name}")
    return report
