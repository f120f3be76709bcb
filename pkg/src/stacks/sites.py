"""
Finite sites: thin categories of opens with covering families and explicit pullbacks.

A pullback U_i ×_U U_j is recorded as the list of its connected pieces (possibly
empty); a prestack evaluated on it is the product over the pieces.
"""
from itertools import combinations, product
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.algebra.validators import ValidationReport
from src.utils.cache import cache_manager
from src.utils.errors import DeskError, ParseError, INVALID_INPUT, MISSING_PULLBACK, UNKNOWN_BUILTIN
from src.utils.logging import logger

SITE_BUILTINS = ('circle2', 'discrete2', 'trivial')
TRANSITIVITY_LIMIT = 1000


class Site:
    """
    Objects with at most one morphism between any two of them. ``arrows[(a, b)]`` is the
    id of the morphism a → b; ``covers[u]`` lists covering families as tuples of
    source objects.
    """

    def __init__(self, objects: Sequence[str], arrows: Mapping[Tuple[str, str], str],
                 covers: Mapping[str, Sequence[Sequence[str]]],
                 pullbacks: Optional[Mapping[FrozenSet[str], Sequence[str]]] = None,
                 points: Optional[Mapping[str, Sequence[Any]]] = None,
                 composition: Optional[Mapping[Tuple[str, str], str]] = None,
                 name: str = 'site'):
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.by_id = {m: ends for ends, m in self.arrows.items()}
        self.covers = {u: [tuple(f) for f in families] for u, families in covers.items()}
        self.pullbacks = {frozenset(k): tuple(v) for k, v in (pullbacks or {}).items()}
        self.points = {k: frozenset(v) for k, v in (points or {}).items()} if points else None
        self.composition = dict(composition) if composition is not None else None
        self.name = name

    def arrow(self, a: str, b: str) -> Optional[str]:
        return self.arrows.get((a, b))

    def below(self, a: str, b: str) -> bool:
        return (a, b) in self.arrows

    def families(self, u: str) -> List[Tuple[str, ...]]:
        return self.covers.get(u, [])

    def pullback(self, a: str, b: str) -> Tuple[str, ...]:
        """Pieces of a ×_U b for two objects over a common U."""
        if self.below(a, b):
            return (a,)
        if self.below(b, a):
            return (b,)
        key = frozenset((a, b))
        if key not in self.pullbacks:
            raise DeskError(MISSING_PULLBACK, f"no pullback recorded for {a} and {b}",
                            {'pair': sorted((a, b))})
        return self.pullbacks[key]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'objects': list(self.objects),
            'morphisms': [{'id': m, 'src': a, 'dst': b} for (a, b), m in sorted(self.arrows.items())],
            'covers': {u: [[self.arrows[(s, u)] for s in f] for f in fams] for u, fams in sorted(self.covers.items())},
        }

    @classmethod
    def from_opens(cls, points: Iterable[Any], opens: Mapping[str, Iterable[Any]],
                   covers: Optional[Mapping[str, Sequence[Sequence[str]]]] = None,
                   name: str = 'site') -> 'Site':
        """
        The site of nonempty opens of the topology generated by ``opens`` on ``points``,
        morphisms the inclusions. Opens without a given name are named by their points.
        Pullbacks are the connected pieces of intersections; identity covers are added.
        """
        universe = frozenset(points)
        named = {frozenset(v): k for k, v in opens.items()}
        topology = {universe, *named}
        changed = True
        while changed:
            changed = False
            for a, b in combinations(list(topology), 2):
                for c in (a & b, a | b):
                    if c and c not in topology:
                        topology.add(c)
                        changed = True
        topology.discard(frozenset())
        if universe not in named:
            named[universe] = 'X'

        def label(s):
            return named.get(s) or '{' + ','.join(sorted(str(p) for p in s)) + '}'

        sets = sorted(topology, key=lambda s: (len(s), label(s)))
        names = {s: label(s) for s in sets}
        arrows = {}
        for a in sets:
            for b in sets:
                if a <= b:
                    arrows[(names[a], names[b])] = f"id_{names[a]}" if a == b else f"{names[a]}<{names[b]}"
        pieces = {}
        for a, b in combinations(sets, 2):
            if not (a <= b or b <= a):
                pieces[frozenset((names[a], names[b]))] = tuple(names[c] for c in _components(a & b, topology))
        families = {names[s]: [(names[s],)] for s in sets}
        for u, fams in (covers or {}).items():
            for fam in fams:
                if tuple(fam) not in families.setdefault(u, []):
                    families[u].append(tuple(fam))
        return cls([names[s] for s in sets], arrows, families, pieces,
                   {names[s]: s for s in sets}, name=name)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = None) -> 'Site':
        """
        ``{"objects", "morphisms": [{id, src, dst}], "composition": {"g,f": h},
        "covers": {object: [[morphism ids]]}, "pullbacks": {"f,g": object | [objects]},
        "points": {object: [...]}}``.
        """
        try:
            objects = [str(o) for o in data['objects']]
            morphisms = [(str(m['id']), str(m['src']), str(m['dst'])) for m in data['morphisms']]
        except (KeyError, TypeError):
            raise ParseError("site needs 'objects' and 'morphisms' with id/src/dst", file=source)
        arrows = {}
        for m, a, b in morphisms:
            if (a, b) in arrows:
                raise DeskError(INVALID_INPUT, f"site is not thin: two morphisms {a} → {b}",
                                {'morphisms': [arrows[(a, b)], m]})
            arrows[(a, b)] = m
        by_id = {m: (a, b) for m, a, b in morphisms}

        def ends(m):
            if m not in by_id:
                raise ParseError(f"unknown morphism {m!r}", file=source)
            return by_id[m]

        covers = {}
        for u, fams in (data.get('covers') or {}).items():
            for fam in fams:
                family = []
                for m in fam:
                    a, b = ends(str(m))
                    if b != u:
                        raise DeskError(INVALID_INPUT, f"cover member {m} does not map to {u}")
                    family.append(a)
                covers.setdefault(str(u), []).append(tuple(family))
        pullbacks = {}
        for key, value in (data.get('pullbacks') or {}).items():
            parts = [p.strip() for p in key.split(',')]
            if len(parts) != 2:
                raise ParseError(f"pullback key {key!r} is not a pair", file=source)
            pieces = [value] if isinstance(value, str) else list(value)
            pullbacks[frozenset(ends(p)[0] for p in parts)] = tuple(str(p) for p in pieces)
        composition = {}
        for key, value in (data.get('composition') or {}).items():
            parts = [p.strip() for p in key.split(',')]
            if len(parts) != 2:
                raise ParseError(f"composition key {key!r} is not a pair", file=source)
            composition[(parts[0], parts[1])] = str(value)
        return cls(objects, arrows, covers, pullbacks, data.get('points'), composition,
                   name=str(data.get('name', source or 'site')))


def _components(s: FrozenSet, topology) -> List[FrozenSet]:
    """Connected pieces of an open set, grown from the minimal neighbourhoods of its points."""
    minimal = {x: frozenset.intersection(*[t for t in topology if x in t]) for x in s}
    remaining = set(s)
    pieces = []
    while remaining:
        piece = set(minimal[min(remaining, key=str)])
        grown = True
        while grown:
            grown = False
            for x in s:
                if x not in piece and minimal[x] & piece:
                    piece |= minimal[x]
                    grown = True
            for x in list(piece):
                if not minimal[x] <= piece:
                    piece |= minimal[x]
                    grown = True
        pieces.append(frozenset(piece))
        remaining -= piece
    return sorted(pieces, key=lambda p: sorted(str(x) for x in p))


def circle2() -> Site:
    """Two arcs U1, U2 covering the circle S, overlapping in two pieces V1, V2."""
    return Site.from_opens('abcd', {'S': 'abcd', 'U1': 'abc', 'U2': 'cda', 'V1': 'a', 'V2': 'c'},
                           {'S': [('U1', 'U2')]}, name='circle2')


def discrete2() -> Site:
    """Two points {1}, {2} covering X = {1, 2}."""
    return Site.from_opens([1, 2], {'X': [1, 2], 'P1': [1], 'P2': [2]},
                           {'X': [('P1', 'P2')]}, name='discrete2')


def trivial_site() -> Site:
    return Site.from_opens(['p'], {'P': ['p']}, name='trivial')


def site_builtin(name: str) -> Site:
    makers = {'circle2': circle2, 'discrete2': discrete2, 'trivial': trivial_site}
    if name not in makers:
        raise DeskError(UNKNOWN_BUILTIN, f"unknown site {name!r}", {'known': list(SITE_BUILTINS)})
    return cache_manager.get_or_create('builtin.site', name, makers[name])


def _covered_by(site: Site, v: str, family: Sequence[str]) -> bool:
    """Some covering family of v has every member below a member of ``family``."""
    return any(all(any(site.below(w, f) for f in family) for w in cover)
               for cover in site.families(v))


def validate_site(site: Site) -> ValidationReport:
    """
    Thinness and composition of the morphism data, identity covers, pullback
    stability and transitivity of covers, both up to the sieve a family generates.
    """
    report = ValidationReport(subject=site.name)
    objects = site.objects
    for a in objects:
        report.checked += 1
        if not site.below(a, a):
            report.add('identity_morphism', object=a)
        if (a,) not in site.families(a):
            report.add('identity_cover', object=a)
    for a, b, c in product(objects, repeat=3):
        if site.below(a, b) and site.below(b, c):
            report.checked += 1
            if not site.below(a, c):
                report.add('composition', path=[a, b, c])
            elif site.composition is not None and a != b and b != c:
                listed = site.composition.get((site.arrow(b, c), site.arrow(a, b)))
                if listed is not None and listed != site.arrow(a, c):
                    report.add('composition_table', path=[a, b, c])
    for u, families in sorted(site.covers.items()):
        for family in families:
            for member in family:
                if not site.below(member, u):
                    report.add('cover_target', object=u, member=member)
            for v in objects:
                if not site.below(v, u):
                    continue
                report.checked += 1
                try:
                    pulled = [piece for member in family for piece in site.pullback(member, v)]
                except DeskError as exc:
                    report.add('missing_pullback', object=u, family=list(family), along=v,
                               pair=exc.details.get('pair'))
                    continue
                if not _covered_by(site, v, pulled):
                    report.add('stability', object=u, family=list(family), along=v)
            choices = [site.families(m) for m in family]
            count = 1
            for c in choices:
                count *= max(1, len(c))
            if count > TRANSITIVITY_LIMIT:
                report.info.setdefault('transitivity_skipped', []).append({'object': u, 'family': list(family)})
                continue
            for refinement in product(*choices):
                report.checked += 1
                composite = [w for fam in refinement for w in fam]
                if not _covered_by(site, u, composite):
                    report.add('transitivity', object=u, family=list(family))
                    break
    if not report.ok:
        logger.warning(f"site {site.name}: {len(report.issues)} violations")
    return report
