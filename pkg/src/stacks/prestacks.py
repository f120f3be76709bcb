"""
Strict prestacks of groupoids on finite sites and the builtin families.
"""
from itertools import product
from typing import Any, Dict, Mapping, Optional, Tuple

from src.algebra import group_builtin
from src.algebra.validators import ValidationReport
from src.utils.errors import DeskError, ParseError, INVALID_INPUT, UNKNOWN_BUILTIN
from src.utils.logging import logger
from .groupoids import (DiscreteGroupoid, ExplicitGroupoid, FiniteGroupoid, GroupGroupoid,
                        GroupoidFunctor, validate_functor, validate_groupoid)
from .sites import Site

PRESTACK_BUILTINS = ('constantBG', 'functions', 'representable')


class Prestack:
    """
    X(U) per object and a restriction functor X(b) → X(a) per morphism a → b, with
    X(a → c) = X(a → b) ∘ X(b → c) on the nose.
    """

    def __init__(self, site: Site, groupoids: Mapping[str, FiniteGroupoid],
                 restrictions: Mapping[Tuple[str, str], GroupoidFunctor], name: str = 'prestack'):
        missing = [u for u in site.objects if u not in groupoids]
        if missing:
            raise DeskError(INVALID_INPUT, f"prestack {name} has no groupoid on {missing}")
        self.site = site
        self.groupoids = dict(groupoids)
        self.restrictions = dict(restrictions)
        self.name = name

    def at(self, u: str) -> FiniteGroupoid:
        return self.groupoids[u]

    def restriction(self, a: str, b: str) -> GroupoidFunctor:
        """X(b) → X(a) along a → b."""
        if (a, b) in self.restrictions:
            return self.restrictions[(a, b)]
        if a == b:
            return GroupoidFunctor.identity(self.groupoids[a])
        raise DeskError(INVALID_INPUT, f"prestack {self.name} has no restriction along {a} → {b}")

    @classmethod
    def from_dict(cls, site: Site, data: Mapping[str, Any], source: str = None) -> 'Prestack':
        """
        ``{"groupoids": {object: groupoid}, "restrictions": {morphism id:
        {"objects": {...}, "morphisms": {...}}}}``.
        """
        try:
            groupoids = {str(u): ExplicitGroupoid.from_dict(g, source) for u, g in data['groupoids'].items()}
        except (KeyError, AttributeError):
            raise ParseError("prestack needs 'groupoids'", file=source)
        restrictions = {}
        for m, table in (data.get('restrictions') or {}).items():
            if m not in site.by_id:
                raise ParseError(f"restriction along unknown morphism {m!r}", file=source)
            a, b = site.by_id[m]
            restrictions[(a, b)] = GroupoidFunctor.from_tables(
                groupoids[b], groupoids[a], table.get('objects', {}), table.get('morphisms', {}), name=f"X({m})")
        return cls(site, groupoids, restrictions, name=str(data.get('name', source or 'prestack')))


def constant_bg(site: Site, group_name: str) -> Prestack:
    """U ↦ BG with identity restrictions."""
    bg = GroupGroupoid(group_builtin(group_name))
    identity = GroupoidFunctor.identity(bg)
    return Prestack(site, {u: bg for u in site.objects},
                    {ends: identity for ends in site.arrows}, name=f"constantBG:{group_name}")


def _require_points(site: Site) -> Dict[str, Any]:
    if site.points is None:
        raise DeskError(INVALID_INPUT, f"site {site.name} records no points for its objects")
    return site.points


def functions(site: Site, size: int) -> Prestack:
    """U ↦ Map(U, {0..size−1}) as a discrete groupoid; restriction forgets points."""
    points = _require_points(site)
    groupoids = {}
    for u in site.objects:
        pts = sorted(points[u], key=str)
        maps = [tuple(zip(pts, values)) for values in product(range(size), repeat=len(pts))]
        groupoids[u] = _LabelledDiscrete(maps, name=f"Map({u})")
    restrictions = {}
    for (a, b) in site.arrows:
        keep = points[a]

        def restrict(f, keep=keep):
            return tuple(pair for pair in f if pair[0] in keep)

        restrictions[(a, b)] = GroupoidFunctor(groupoids[b], groupoids[a], restrict,
                                               lambda m, r=restrict: ('id', r(m[1])), name=f"res({a},{b})")
    return Prestack(site, groupoids, restrictions, name=f"functions:{size}")


def representable(site: Site, target: str) -> Prestack:
    """U ↦ Hom(U, target), discrete; at most one element on a thin site."""
    if target not in site.objects:
        raise DeskError(INVALID_INPUT, f"{target} is not an object of {site.name}")
    groupoids = {u: DiscreteGroupoid([site.arrow(u, target)] if site.below(u, target) else [],
                                     name=f"Hom({u},{target})") for u in site.objects}
    restrictions = {}
    for (a, b) in site.arrows:
        image = site.arrow(a, target)
        restrictions[(a, b)] = GroupoidFunctor(groupoids[b], groupoids[a], lambda m, i=image: i,
                                               lambda m, i=image: ('id', i), name=f"res({a},{b})")
    return Prestack(site, groupoids, restrictions, name=f"representable:{target}")


class _LabelledDiscrete(DiscreteGroupoid):
    def object_label(self, a) -> str:
        return ','.join(f"{p}={v}" for p, v in a) or '∅'


def prestack_builtin(site: Site, reference: str) -> Prestack:
    """``constantBG:<group>``, ``functions:<n>`` or ``representable:<object>``."""
    kind, _, arg = reference.partition(':')
    if kind == 'constantBG' and arg:
        return constant_bg(site, arg)
    if kind == 'functions' and arg.isdigit():
        return functions(site, int(arg))
    if kind == 'representable' and arg:
        return representable(site, arg)
    raise DeskError(UNKNOWN_BUILTIN, f"unknown prestack {reference!r}", {'known': list(PRESTACK_BUILTINS)})


def validate_prestack(x: Prestack, deep: bool = True) -> ValidationReport:
    """Every X(U) a groupoid, every restriction a functor, strict functoriality."""
    site = x.site
    report = ValidationReport(subject=x.name)
    if deep:
        for u in site.objects:
            for issue in validate_groupoid(x.at(u)).issues:
                report.add('groupoid', object=u, issue=issue)
        for (a, b) in site.arrows:
            if a != b:
                for issue in validate_functor(x.restriction(a, b)).issues:
                    report.add('functor', morphism=site.arrow(a, b), issue=issue)
    for u in site.objects:
        report.checked += 1
        difference = x.restriction(u, u).agrees_with(GroupoidFunctor.identity(x.at(u)))
        if difference:
            report.add('strict_identity', object=u, where=difference)
    for a, b, c in product(site.objects, repeat=3):
        if a != b and b != c and site.below(a, b) and site.below(b, c):
            report.checked += 1
            composite = x.restriction(a, b).after(x.restriction(b, c))
            difference = x.restriction(a, c).agrees_with(composite)
            if difference:
                report.add('strictness', path=[a, b, c], where=difference)
    if not report.ok:
        logger.warning(f"prestack {x.name}: {len(report.issues)} violations")
    return report
