"""
Finite groupoids, functors between them, weak equivalences and π₀.

Objects and morphisms are hashable values chosen by each concrete groupoid; a
groupoid answers source/target/compose/identity/inverse for its own values.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from src.algebra import FiniteGroup
from src.algebra.validators import ValidationReport
from src.utils.errors import DeskError, ParseError, INVALID_INPUT
from src.utils.logging import logger

Obj = Hashable
Mor = Hashable


class FiniteGroupoid(ABC):
    """A finite category in which every morphism is invertible."""

    name: str = 'groupoid'

    @abstractmethod
    def objects(self) -> Sequence[Obj]:
        ...

    @abstractmethod
    def hom(self, a: Obj, b: Obj) -> List[Mor]:
        ...

    @abstractmethod
    def source(self, m: Mor) -> Obj:
        ...

    @abstractmethod
    def target(self, m: Mor) -> Obj:
        ...

    @abstractmethod
    def compose(self, g: Mor, f: Mor) -> Mor:
        """g ∘ f for f: a → b, g: b → c."""

    @abstractmethod
    def identity(self, a: Obj) -> Mor:
        ...

    @abstractmethod
    def inverse(self, m: Mor) -> Mor:
        ...

    def morphisms(self) -> Iterator[Mor]:
        objects = self.objects()
        for a in objects:
            for b in objects:
                yield from self.hom(a, b)

    def object_label(self, a: Obj) -> str:
        return str(a)

    def morphism_label(self, m: Mor) -> str:
        return str(m)

    def connected(self, a: Obj, b: Obj) -> bool:
        return bool(self.hom(a, b))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class ExplicitGroupoid(FiniteGroupoid):
    """
    Groupoid given by tables. Identities and inverses are derived from the composition
    table; ``validate_groupoid`` reports a table that lacks them.
    """

    def __init__(self, objects: Sequence[str], morphisms: Mapping[str, Tuple[str, str]],
                 composition: Mapping[Tuple[str, str], str], name: str = 'groupoid'):
        self._objects = tuple(objects)
        self.arrows = dict(morphisms)
        self.composition = dict(composition)
        self.name = name
        for m, (a, b) in self.arrows.items():
            if a not in self._objects or b not in self._objects:
                raise DeskError(INVALID_INPUT, f"morphism {m} has an unknown endpoint")
        self._hom: Dict[Tuple[str, str], List[str]] = {}
        for m, ends in sorted(self.arrows.items()):
            self._hom.setdefault(ends, []).append(m)
        self._identity = {}
        for a in self._objects:
            for m in self._hom.get((a, a), []):
                if all(self.composition.get((m, f)) == f for f in self.arrows if self.arrows[f][1] == a):
                    self._identity[a] = m
                    break

    def objects(self) -> Sequence[Obj]:
        return self._objects

    def hom(self, a, b) -> List[Mor]:
        return list(self._hom.get((a, b), []))

    def source(self, m):
        return self.arrows[m][0]

    def target(self, m):
        return self.arrows[m][1]

    def compose(self, g, f):
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise DeskError(INVALID_INPUT, f"{self.name}: composite {g}∘{f} is not in the table")

    def identity(self, a):
        if a not in self._identity:
            raise DeskError(INVALID_INPUT, f"{self.name}: object {a} has no identity")
        return self._identity[a]

    def inverse(self, m):
        a, b = self.arrows[m]
        for n in self.hom(b, a):
            if self.composition.get((n, m)) == self.identity(a) and self.composition.get((m, n)) == self.identity(b):
                return n
        raise DeskError(INVALID_INPUT, f"{self.name}: morphism {m} is not invertible")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = None) -> 'ExplicitGroupoid':
        """``{"objects": [...], "morphisms": [{"id", "src", "dst"}], "composition": {"g,f": h}}``."""
        try:
            objects = [str(o) for o in data['objects']]
            morphisms = {str(m['id']): (str(m['src']), str(m['dst'])) for m in data.get('morphisms', [])}
        except (KeyError, TypeError):
            raise ParseError("groupoid needs 'objects' and morphisms with id/src/dst", file=source)
        composition = {}
        for key, value in (data.get('composition') or {}).items():
            parts = [p.strip() for p in key.split(',')]
            if len(parts) != 2:
                raise ParseError(f"composition key {key!r} is not a pair", file=source)
            composition[(parts[0], parts[1])] = str(value)
        return cls(objects, morphisms, composition, name=str(data.get('name', source or 'groupoid')))


class DiscreteGroupoid(FiniteGroupoid):
    """Only identity morphisms, written ('id', a)."""

    def __init__(self, objects: Sequence[Obj], name: str = 'discrete'):
        self._objects = tuple(objects)
        self.name = name

    def objects(self):
        return self._objects

    def hom(self, a, b):
        return [('id', a)] if a == b else []

    def source(self, m):
        return m[1]

    def target(self, m):
        return m[1]

    def compose(self, g, f):
        return f

    def identity(self, a):
        return ('id', a)

    def inverse(self, m):
        return m

    def morphism_label(self, m) -> str:
        return f"id_{m[1]}"


class GroupGroupoid(FiniteGroupoid):
    """BG: one object '*', morphisms the element indices of G."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.name = f"B{group.name}"

    def objects(self):
        return ('*',)

    def hom(self, a, b):
        return list(range(self.group.order))

    def source(self, m):
        return '*'

    def target(self, m):
        return '*'

    def compose(self, g, f):
        return self.group.table[g][f]

    def identity(self, a):
        return self.group.identity

    def inverse(self, m):
        return self.group.inv(m)

    def morphism_label(self, m) -> str:
        return self.group.labels[m]


class ActionGroupoid(FiniteGroupoid):
    """
    Action groupoid of a subgroup H ≤ G acting on G by left multiplication:
    morphisms (k, g): g → k·g for k ∈ H.
    """

    def __init__(self, group: FiniteGroup, acting: Sequence[int], name: str = 'action'):
        self.group = group
        self.acting = tuple(sorted(acting))
        self._members = set(self.acting)
        self.name = name

    def objects(self):
        return tuple(range(self.group.order))

    def hom(self, a, b):
        k = self.group.multiply(b, self.group.inv(a))
        return [(k, a)] if k in self._members else []

    def source(self, m):
        return m[1]

    def target(self, m):
        return self.group.multiply(m[0], m[1])

    def compose(self, g, f):
        return (self.group.multiply(g[0], f[0]), f[1])

    def identity(self, a):
        return (self.group.identity, a)

    def inverse(self, m):
        return (self.group.inv(m[0]), self.target(m))

    def object_label(self, a) -> str:
        return self.group.labels[a]

    def morphism_label(self, m) -> str:
        return f"{self.group.labels[m[0]]}·{self.group.labels[m[1]]}"


class ProductGroupoid(FiniteGroupoid):
    """Product of factors; the empty product is the trivial groupoid on ()."""

    def __init__(self, factors: Sequence[FiniteGroupoid], name: str = 'product'):
        self.factors = tuple(factors)
        self.name = name

    def objects(self):
        return tuple(product(*(f.objects() for f in self.factors)))

    def hom(self, a, b):
        return [tuple(m) for m in product(*(f.hom(x, y) for f, x, y in zip(self.factors, a, b)))]

    def connected(self, a, b) -> bool:
        return all(f.connected(x, y) for f, x, y in zip(self.factors, a, b))

    def source(self, m):
        return tuple(f.source(x) for f, x in zip(self.factors, m))

    def target(self, m):
        return tuple(f.target(x) for f, x in zip(self.factors, m))

    def compose(self, g, f):
        return tuple(c.compose(x, y) for c, x, y in zip(self.factors, g, f))

    def identity(self, a):
        return tuple(f.identity(x) for f, x in zip(self.factors, a))

    def inverse(self, m):
        return tuple(f.inverse(x) for f, x in zip(self.factors, m))

    def object_label(self, a) -> str:
        return '(' + ', '.join(f.object_label(x) for f, x in zip(self.factors, a)) + ')'

    def morphism_label(self, m) -> str:
        return '(' + ', '.join(f.morphism_label(x) for f, x in zip(self.factors, m)) + ')'


class GroupoidFunctor:
    """A functor given by callables on objects and on morphisms."""

    def __init__(self, source: FiniteGroupoid, target: FiniteGroupoid,
                 on_objects: Callable[[Obj], Obj], on_morphisms: Callable[[Mor], Mor],
                 name: str = 'F'):
        self.source = source
        self.target = target
        self.on_objects = on_objects
        self.on_morphisms = on_morphisms
        self.name = name

    def obj(self, a: Obj) -> Obj:
        return self.on_objects(a)

    def mor(self, m: Mor) -> Mor:
        return self.on_morphisms(m)

    def after(self, other: 'GroupoidFunctor') -> 'GroupoidFunctor':
        """self ∘ other."""
        return GroupoidFunctor(other.source, self.target,
                               lambda a: self.obj(other.obj(a)),
                               lambda m: self.mor(other.mor(m)),
                               name=f"{self.name}∘{other.name}")

    def agrees_with(self, other: 'GroupoidFunctor') -> Optional[Dict[str, Any]]:
        """None when equal on every object and morphism, else the first difference."""
        for a in self.source.objects():
            if self.obj(a) != other.obj(a):
                return {'object': self.source.object_label(a)}
        for m in self.source.morphisms():
            if self.mor(m) != other.mor(m):
                return {'morphism': self.source.morphism_label(m)}
        return None

    @classmethod
    def identity(cls, groupoid: FiniteGroupoid) -> 'GroupoidFunctor':
        return cls(groupoid, groupoid, lambda a: a, lambda m: m, name=f"id_{groupoid.name}")

    @classmethod
    def from_tables(cls, source: FiniteGroupoid, target: FiniteGroupoid,
                    objects: Mapping[Obj, Obj], morphisms: Mapping[Mor, Mor],
                    name: str = 'F') -> 'GroupoidFunctor':
        def lookup(table, kind):
            def apply(x):
                if x not in table:
                    raise DeskError(INVALID_INPUT, f"functor {name} is undefined on {kind} {x}")
                return table[x]
            return apply
        return cls(source, target, lookup(dict(objects), 'object'), lookup(dict(morphisms), 'morphism'), name)


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    """Identities, closure and associativity of composition, and invertibility."""
    report = ValidationReport(subject=g.name)
    objects = list(g.objects())
    try:
        ids = {a: g.identity(a) for a in objects}
    except DeskError as exc:
        report.add('identity', message=exc.message)
        return report
    for m in g.morphisms():
        report.checked += 1
        a, b = g.source(m), g.target(m)
        try:
            if g.compose(m, ids[a]) != m or g.compose(ids[b], m) != m:
                report.add('unit', morphism=g.morphism_label(m))
            n = g.inverse(m)
            if g.compose(n, m) != ids[a]:
                report.add('inverse', morphism=g.morphism_label(m))
        except DeskError as exc:
            report.add('inverse', morphism=g.morphism_label(m), message=exc.message)
    for a, b, c, d in product(objects, repeat=4):
        for f in g.hom(a, b):
            for h in g.hom(b, c):
                for k in g.hom(c, d):
                    report.checked += 1
                    try:
                        if g.compose(k, g.compose(h, f)) != g.compose(g.compose(k, h), f):
                            report.add('associativity', morphisms=[g.morphism_label(x) for x in (k, h, f)])
                    except DeskError as exc:
                        report.add('closure', message=exc.message)
    if not report.ok:
        logger.warning(f"groupoid {g.name}: {len(report.issues)} violations")
    return report


def validate_functor(f: GroupoidFunctor) -> ValidationReport:
    """Sources, targets, identities and composition are preserved."""
    src, dst = f.source, f.target
    report = ValidationReport(subject=f.name)
    for a in src.objects():
        report.checked += 1
        if f.mor(src.identity(a)) != dst.identity(f.obj(a)):
            report.add('identity', object=src.object_label(a))
    objects = list(src.objects())
    for a, b in product(objects, repeat=2):
        for m in src.hom(a, b):
            image = f.mor(m)
            if dst.source(image) != f.obj(a) or dst.target(image) != f.obj(b):
                report.add('endpoints', morphism=src.morphism_label(m))
            for c in objects:
                for n in src.hom(b, c):
                    report.checked += 1
                    if f.mor(src.compose(n, m)) != dst.compose(f.mor(n), image):
                        report.add('composition', morphisms=[src.morphism_label(n), src.morphism_label(m)])
    return report


@dataclass
class Components:
    count: int
    representatives: List[str]
    component_of: Dict[Obj, int] = field(default_factory=dict, repr=False)

    def to_payload(self) -> Dict[str, Any]:
        return {'count': self.count, 'representatives': self.representatives}


def pi0(g: FiniteGroupoid) -> Components:
    """
    Connected components. Each component is represented by its least object label and
    components are listed in the order of those labels.
    """
    objects = sorted(g.objects(), key=g.object_label)
    parent = {a: a for a in objects}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, a in enumerate(objects):
        for b in objects[i + 1:]:
            ra, rb = find(a), find(b)
            if ra != rb and g.connected(a, b):
                parent[rb] = ra
    roots = []
    for a in objects:
        r = find(a)
        if r not in roots:
            roots.append(r)
    position = {r: i for i, r in enumerate(roots)}
    return Components(len(roots), [g.object_label(r) for r in roots],
                      {a: position[find(a)] for a in objects})


@dataclass
class WeakEquivalenceVerdict:
    holds: bool
    fully_faithful: bool
    essentially_surjective: bool
    witness: Optional[Dict[str, Any]] = None

    def to_payload(self) -> Dict[str, Any]:
        return {
            'holds': self.holds,
            'fully_faithful': self.fully_faithful,
            'essentially_surjective': self.essentially_surjective,
            'witness': self.witness,
        }


def is_weak_equivalence(f: GroupoidFunctor) -> WeakEquivalenceVerdict:
    """
    Fully faithful: F is a bijection hom(a, b) → hom(Fa, Fb) for every pair.
    Essentially surjective: every component of the target contains some F(a).
    The witness names the first failing object pair or an unreachable object.
    """
    src, dst = f.source, f.target
    witness = None
    faithful = True
    objects = sorted(src.objects(), key=src.object_label)
    for a, b in product(objects, repeat=2):
        images = [f.mor(m) for m in src.hom(a, b)]
        if len(set(images)) != len(images):
            faithful, witness = False, {'kind': 'not_faithful',
                                        'objects': [src.object_label(a), src.object_label(b)]}
            break
        if len(images) != len(dst.hom(f.obj(a), f.obj(b))):
            faithful, witness = False, {'kind': 'not_full',
                                        'objects': [src.object_label(a), src.object_label(b)]}
            break
    components = pi0(dst)
    hit = {components.component_of[f.obj(a)] for a in objects}
    surjective = len(hit) == components.count
    if not surjective and witness is None:
        missing = min(set(range(components.count)) - hit)
        witness = {'kind': 'unreachable', 'object': components.representatives[missing]}
    return WeakEquivalenceVerdict(faithful and surjective, faithful, surjective, witness)
