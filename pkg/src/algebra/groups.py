"""
Finite groups by multiplication table, with the bundled tables Z_n, S_n, D_n and Q8.
"""
import re
from itertools import permutations, product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from src.utils.cache import cache_manager
from src.utils.errors import DeskError, ParseError, INVALID_INPUT, UNKNOWN_BUILTIN
from src.utils.logging import logger
from .validators import ValidationReport

GROUP_PATTERN = re.compile(r'^(Z|S|D)(\d+)$|^Q8$')
Permutation = Tuple[int, ...]


class FiniteGroup:
    """
    Elements are indices 0..order−1; ``table[a][b]`` is the index of a·b.

    Identity and inverses are derived from the table, so a table without them fails
    validation instead of construction.
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 name: str = 'group'):
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise DeskError(INVALID_INPUT, "group table must be square and non-empty")
        if any(not (0 <= v < n) for row in table for v in row):
            raise DeskError(INVALID_INPUT, "group table entries out of range")
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise DeskError(INVALID_INPUT, "group labels must be unique, one per element")
        self.name = name
        self.identity = next((e for e in range(n)
                              if all(self.table[e][a] == a == self.table[a][e] for a in range(n))), None)
        self.inverse: Tuple[Optional[int], ...] = tuple(
            next((b for b in range(n) if self.table[a][b] == self.identity), None) for a in range(n)
        )

    @property
    def order(self) -> int:
        return len(self.table)

    def multiply(self, *elements: int) -> int:
        result = self.identity
        for element in elements:
            result = self.table[result][element]
        return result

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def commutator(self, a: int, b: int) -> int:
        """a b a⁻¹ b⁻¹."""
        return self.multiply(a, b, self.inv(a), self.inv(b))

    def conjugate(self, a: int, by: int) -> int:
        """by⁻¹ · a · by."""
        return self.multiply(self.inv(by), a, by)

    def element(self, token) -> int:
        """Resolve a label or an index."""
        token = str(token).strip()
        if token in self.labels:
            return self.labels.index(token)
        if token.isdigit() and int(token) < self.order:
            return int(token)
        raise ParseError(f"{token!r} is not an element of {self.name}")

    def conjugacy_classes(self) -> List[Tuple[int, ...]]:
        seen = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            orbit = tuple(sorted({self.conjugate(a, g) for g in range(self.order)}))
            seen.update(orbit)
            classes.append(orbit)
        return classes

    def subgroup(self, generators: Sequence[int]) -> Tuple[int, ...]:
        """Subgroup generated by the given elements, sorted."""
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            a = frontier.pop()
            for g in generators:
                b = self.table[a][g]
                if b not in members:
                    members.add(b)
                    frontier.append(b)
        return tuple(sorted(members))

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'order': self.order, 'labels': list(self.labels),
                'table': [list(row) for row in self.table]}

    @classmethod
    def from_permutations(cls, generators: Sequence[Permutation], degree: int,
                          name: str = 'group') -> 'FiniteGroup':
        """Closure of permutation generators, elements ordered lexicographically."""
        identity = tuple(range(degree))
        for g in generators:
            if sorted(g) != list(identity):
                raise DeskError(INVALID_INPUT, f"{g} is not a permutation of {degree} points")
        members = {identity}
        frontier = [identity]
        while frontier:
            p = frontier.pop()
            for g in generators:
                q = _compose(p, g)
                if q not in members:
                    members.add(q)
                    frontier.append(q)
        return cls.from_elements(sorted(members), name)

    @classmethod
    def from_elements(cls, elements: Sequence[Permutation], name: str) -> 'FiniteGroup':
        position = {p: i for i, p in enumerate(elements)}
        table = [[position[_compose(p, q)] for q in elements] for p in elements]
        return cls(table, [cycle_label(p) for p in elements], name=name)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = None) -> 'FiniteGroup':
        """
        ``{"order": n, "table": row-major indices}`` or
        ``{"permutations": [[images]], "degree": d}``.
        """
        name = str(data.get('name', source or 'group'))
        if 'permutations' in data:
            try:
                degree = int(data['degree'])
                generators = [tuple(int(v) for v in g) for g in data['permutations']]
            except (KeyError, TypeError, ValueError):
                raise ParseError("permutation group needs 'degree' and integer images", file=source)
            return cls.from_permutations(generators, degree, name)
        try:
            order = int(data['order'])
            flat = [int(v) for v in data['table']]
        except (KeyError, TypeError, ValueError):
            raise ParseError("group file needs 'order' and 'table'", file=source)
        if len(flat) != order * order:
            raise ParseError(f"table has {len(flat)} entries, expected {order * order}", file=source)
        rows = [flat[r * order:(r + 1) * order] for r in range(order)]
        return cls(rows, data.get('labels'), name=name)


def _compose(p: Permutation, q: Permutation) -> Permutation:
    """(p·q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def cycle_label(p: Permutation) -> str:
    """Cycle notation on 1-based points, "e" for the identity."""
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle, i = [], start
        while i not in seen:
            seen.add(i)
            cycle.append(str(i + 1))
            i = p[i]
        cycles.append('(' + ''.join(cycle) + ')')
    return ''.join(cycles) or 'e'


def cyclic(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"Z{n}")


def symmetric(n: int) -> FiniteGroup:
    return FiniteGroup.from_elements(sorted(permutations(range(n))), name=f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rotation, reflection], n, name=f"D{n}")


def quaternion() -> FiniteGroup:
    """Q8 = {±1, ±i, ±j, ±k}."""
    units = ['1', 'i', 'j', 'k']
    unit_table = {
        ('1', u): (1, u) for u in units
    }
    unit_table.update({(u, '1'): (1, u) for u in units})
    for u in units[1:]:
        unit_table[(u, u)] = (-1, '1')
    for a, b, c in (('i', 'j', 'k'), ('j', 'k', 'i'), ('k', 'i', 'j')):
        unit_table[(a, b)] = (1, c)
        unit_table[(b, a)] = (-1, c)
    elements = [(s, u) for u in units for s in (1, -1)]
    labels = [u if s == 1 else f"-{u}" for s, u in elements]
    position = {e: i for i, e in enumerate(elements)}
    table = []
    for (s, u), (t, v) in product(elements, repeat=2):
        sign, w = unit_table[(u, v)]
        table.append(position[(s * t * sign, w)])
    rows = [table[r * 8:(r + 1) * 8] for r in range(8)]
    return FiniteGroup(rows, labels, name='Q8')


BUNDLED_GROUPS = ('Z2', 'Z3', 'Z4', 'S3', 'Q8', 'D4')


def group_builtin(name: str) -> FiniteGroup:
    return cache_manager.get_or_create('group', name, lambda: _make_group(name))


def _make_group(name: str) -> FiniteGroup:
    match = GROUP_PATTERN.match(name.strip())
    if not match:
        raise DeskError(UNKNOWN_BUILTIN, f"unknown group {name!r}", {'known': list(BUNDLED_GROUPS)})
    if name.strip() == 'Q8':
        return quaternion()
    family, n = match.group(1), int(match.group(2))
    if n < 1 or (family == 'D' and n < 3):
        raise DeskError(UNKNOWN_BUILTIN, f"group {name!r} is out of range")
    if family == 'Z':
        return cyclic(n)
    if family == 'S':
        return symmetric(n)
    return dihedral(n)


def validate_group(group: FiniteGroup) -> ValidationReport:
    """Identity, inverses and associativity on all triples."""
    report = ValidationReport(subject=group.name)
    if group.identity is None:
        report.add('identity')
        return report
    for a, inverse in enumerate(group.inverse):
        report.checked += 1
        if inverse is None or group.table[inverse][a] != group.identity:
            report.add('inverse', element=group.labels[a])
    n = group.order
    for a, b, c in product(range(n), repeat=3):
        report.checked += 1
        if group.table[group.table[a][b]][c] != group.table[a][group.table[b][c]]:
            report.add('associativity', triple=[group.labels[a], group.labels[b], group.labels[c]])
            if len(report.issues) > 20:
                break
    if not report.ok:
        logger.warning(f"group {group.name}: {len(report.issues)} violations")
    return report
