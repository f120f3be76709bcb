"""
Prefactorization data on finite posets of opens: tensor complexes with Koszul
signs, the invariance, chain-map and associativity checks, and the classical
observables of a disjoint-union model.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from src.algebra import StructureValidator, ValidationReport, resolve_dgla
from src.config import Config
from src.foundation import CochainComplex, GradedVectorSpace, Matrix, add_into
from src.utils.errors import (DeskError, ParseError, DEGREE_BOUND_EXCEEDED, NOT_DISJOINT_POSET,
                              VALIDATION_ERROR)
from src.utils.logging import logger
from src.utils.validation import InputValidator


Basis = Tuple[Tuple[int, int], ...]


class TensorComplex:
    """
    C₁ ⊗ … ⊗ C_k degreewise. A basis element is a tuple of (degree, index) per
    factor; elements of total degree n are listed by degree tuple, then by index tuple.
    """

    def __init__(self, factors: Sequence[CochainComplex]):
        self.factors = tuple(factors)
        self._basis: Dict[int, List[Basis]] = {}
        self._position: Dict[int, Dict[Basis, int]] = {}
        for degrees in product(*[c.degrees() for c in self.factors]):
            total = sum(degrees)
            bucket = self._basis.setdefault(total, [])
            for indices in product(*[range(c.spaces.dim(d)) for c, d in zip(self.factors, degrees)]):
                bucket.append(tuple(zip(degrees, indices)))
        self._basis = {n: sorted(b) for n, b in sorted(self._basis.items())}
        self._position = {n: {x: i for i, x in enumerate(b)} for n, b in self._basis.items()}

    def degrees(self) -> List[int]:
        return list(self._basis)

    def basis(self, n: int) -> List[Basis]:
        return self._basis.get(n, [])

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def position(self, n: int, x: Basis) -> int:
        return self._position[n][x]

    def differential(self, n: int) -> Matrix:
        """d(x₁⊗…⊗x_k) = Σᵢ (−1)^{|x₁|+…+|x_{i−1}|} x₁⊗…⊗dxᵢ⊗…⊗x_k."""
        columns = []
        for x in self.basis(n):
            image: Dict[int, Fraction] = {}
            sign = 1
            for i, (degree, index) in enumerate(x):
                column = self.factors[i].differential(degree).column(index)
                for j, c in enumerate(column):
                    if c:
                        y = x[:i] + ((degree + 1, j),) + x[i + 1:]
                        add_into(image, {self.position(n + 1, y): c}, sign)
                sign *= -1 if degree % 2 else 1
            columns.append(image)
        return _from_columns(columns, self.dim(n + 1))


def _from_columns(columns: Sequence[Mapping[int, Fraction]], rows: int) -> Matrix:
    data = [[Fraction(0)] * len(columns) for _ in range(rows)]
    for c, column in enumerate(columns):
        for r, value in column.items():
            data[r][c] = value
    return Matrix(rows, len(columns), data)


def reorder(x: Basis, perm: Sequence[int]) -> Tuple[int, Basis]:
    """Move factor ``perm[j]`` to position j; the Koszul sign counts odd swaps."""
    sign = 1
    for i, j in combinations(range(len(perm)), 2):
        if perm[i] > perm[j] and x[perm[i]][0] % 2 and x[perm[j]][0] % 2:
            sign = -sign
    return sign, tuple(x[p] for p in perm)


@dataclass
class StructureMap:
    """ι : Obs(U₁) ⊗ … ⊗ Obs(U_k) → Obs(V), one matrix per tensor degree."""

    sources: Tuple[str, ...]
    target: str
    matrices: Dict[int, Matrix] = field(default_factory=dict)

    def matrix(self, n: int, rows: int, cols: int) -> Matrix:
        if n in self.matrices:
            return self.matrices[n]
        return Matrix.zeros(rows, cols)

    @property
    def label(self) -> str:
        return f"({', '.join(self.sources)}) -> {self.target}"


class PrefactData:
    """Opens with inclusion order and disjointness, a complex per open, structure maps."""

    def __init__(self, opens: Sequence[str], order: Sequence[Tuple[str, str]],
                 disjoint: Sequence[Tuple[str, str]], complexes: Mapping[str, CochainComplex],
                 maps: Sequence[StructureMap], name: str = 'prefact'):
        self.opens = tuple(opens)
        self.order = {(a, a) for a in self.opens} | {tuple(p) for p in order}
        self.disjoint = {frozenset(p) for p in disjoint}
        self.complexes = dict(complexes)
        self.maps = list(maps)
        self.name = name
        self._tensors: Dict[Tuple[str, ...], TensorComplex] = {}

    def below(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def are_disjoint(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.disjoint

    def tensor(self, sources: Sequence[str]) -> TensorComplex:
        key = tuple(sources)
        if key not in self._tensors:
            self._tensors[key] = TensorComplex([self.complexes[s] for s in key])
        return self._tensors[key]

    def maps_on(self, sources: FrozenSet[str], target: str) -> List[StructureMap]:
        return [m for m in self.maps if m.target == target and frozenset(m.sources) == sources]

    def to_dict(self) -> Dict[str, Any]:
        def complex_dict(c: CochainComplex):
            return {
                'dims': {str(d): c.spaces.dim(d) for d in c.degrees()},
                'differentials': {str(d): [[InputValidator.format_rational(v) for v in row]
                                           for row in m.to_lists()]
                                  for d, m in sorted(c.differentials.items())},
            }
        return {
            'opens': list(self.opens),
            'order': sorted([a, b] for a, b in self.order if a != b),
            'disjoint': sorted(sorted(p) for p in self.disjoint),
            'complexes': {u: complex_dict(self.complexes[u]) for u in self.opens},
            'maps': [{
                'sources': list(m.sources),
                'target': m.target,
                'matrices': {str(n): [[InputValidator.format_rational(v) for v in row] for row in x.to_lists()]
                             for n, x in sorted(m.matrices.items())},
            } for m in self.maps],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = None) -> 'PrefactData':
        """
        ``{"opens", "order": [[a, b]], "disjoint": [[a, b]], "complexes": {open: {"dims":
        {deg: n}, "differentials": {deg: rows}}}, "maps": [{"sources", "target", "matrices"}]}``.
        """
        try:
            opens = [str(u) for u in data['opens']]
            complexes = {u: _complex_from_dict(data['complexes'][u], source) for u in opens}
            maps = [StructureMap(tuple(m['sources']), m['target'],
                                 {int(n): _matrix_from_rows(rows, source) for n, rows in m.get('matrices', {}).items()})
                    for m in data.get('maps', [])]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed prefactorization data: {e}", file=source)
        return cls(opens, [tuple(p) for p in data.get('order', [])], [tuple(p) for p in data.get('disjoint', [])],
                   complexes, maps, name=data.get('name', source or 'prefact'))


def _matrix_from_rows(rows, source) -> Matrix:
    values = [[InputValidator.parse_rational(v, source) for v in row] for row in rows]
    return Matrix.from_rows(values)


def _complex_from_dict(data: Mapping[str, Any], source: str = None) -> CochainComplex:
    dims = {int(d): int(n) for d, n in data['dims'].items()}
    differentials = {}
    for d, rows in (data.get('differentials') or {}).items():
        d = int(d)
        values = [[InputValidator.parse_rational(v, source) for v in row] for row in rows]
        differentials[d] = Matrix(dims.get(d + 1, 0), dims.get(d, 0), values)
    return CochainComplex(GradedVectorSpace.from_dims(dims), differentials)


def validate_prefact(d: PrefactData) -> ValidationReport:
    """Known opens, symmetric disjointness compatible with the order, well-shaped maps."""
    report = ValidationReport(subject=d.name)
    known = set(d.opens)
    for a, b in sorted(d.order):
        report.checked += 1
        if a not in known or b not in known:
            report.add('unknown_open', pair=[a, b])
    for pair in sorted(sorted(p) for p in d.disjoint):
        report.checked += 1
        if len(pair) != 2 or any(u not in known for u in pair):
            report.add('bad_disjoint_pair', pair=pair)
            continue
        a, b = pair
        for c in d.opens:
            if (d.below(c, a) and not d.are_disjoint(c, b) and c != a) or \
                    (d.below(c, b) and not d.are_disjoint(c, a) and c != b):
                report.add('disjointness_not_inherited', pair=pair, open=c)
    for u in d.opens:
        report.checked += 1
        if d.complexes[u].first_unclosed_degree() is not None:
            report.add('not_a_complex', open=u)
    for m in d.maps:
        report.checked += 1
        if m.target not in known or any(s not in known for s in m.sources):
            report.add('unknown_open', map=m.label)
            continue
        if len(set(m.sources)) != len(m.sources):
            report.add('repeated_source', map=m.label)
            continue
        if any(not d.below(s, m.target) for s in m.sources):
            report.add('source_not_included', map=m.label)
        if any(not d.are_disjoint(a, b) for a, b in combinations(m.sources, 2)):
            report.add('sources_not_disjoint', map=m.label)
        tensor, target = d.tensor(m.sources), d.complexes[m.target].spaces
        for n, matrix in m.matrices.items():
            if matrix.shape != (target.dim(n), tensor.dim(n)):
                report.add('shape', map=m.label, degree=n, shape=list(matrix.shape),
                           expected=[target.dim(n), tensor.dim(n)])
    if not report.ok:
        logger.warning(f"prefactorization data {d.name}: {len(report.issues)} violations")
    return report


@dataclass
class PrefactReport:
    name: str
    checked: Dict[str, int] = field(default_factory=lambda: {'permutation': 0, 'chain_map': 0, 'associativity': 0})
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_payload(self) -> Dict[str, Any]:
        return {'name': self.name, 'ok': self.ok, 'checked': dict(self.checked), 'failures': self.failures}


def _column(d: PrefactData, m: StructureMap, n: int, x: Basis) -> Dict[int, Fraction]:
    tensor = d.tensor(m.sources)
    matrix = m.matrix(n, d.complexes[m.target].spaces.dim(n), tensor.dim(n))
    values = matrix.column(tensor.position(n, x))
    return {r: v for r, v in enumerate(values) if v}


def _check_permutations(d: PrefactData, report: PrefactReport) -> None:
    seen = set()
    for m in d.maps:
        key = (frozenset(m.sources), m.target)
        if key in seen:
            continue
        seen.add(key)
        for other in d.maps_on(*key)[1:]:
            perm = [m.sources.index(s) for s in other.sources]
            tensor = d.tensor(m.sources)
            for n in tensor.degrees():
                report.checked['permutation'] += 1
                for x in tensor.basis(n):
                    sign, y = reorder(x, perm)
                    swapped = {r: sign * v for r, v in _column(d, other, n, y).items()}
                    if swapped != _column(d, m, n, x):
                        report.failures.append({
                            'kind': 'permutation', 'target': m.target,
                            'orders': [list(m.sources), list(other.sources)], 'degree': n,
                        })
                        break


def _check_chain_maps(d: PrefactData, report: PrefactReport) -> None:
    for m in d.maps:
        tensor, target = d.tensor(m.sources), d.complexes[m.target]
        for n in tensor.degrees():
            report.checked['chain_map'] += 1
            rows, cols = target.spaces.dim(n + 1), tensor.dim(n)
            left = target.differential(n) @ m.matrix(n, target.spaces.dim(n), cols)
            right = m.matrix(n + 1, rows, tensor.dim(n + 1)) @ tensor.differential(n)
            if left != right:
                report.failures.append({'kind': 'chain_map', 'map': m.label, 'degree': n})


def _blocks(d: PrefactData, direct: StructureMap, outer: StructureMap) -> Optional[List[List[str]]]:
    """Group the direct sources by the outer open containing each; None if impossible."""
    blocks: List[List[str]] = [[] for _ in outer.sources]
    for s in direct.sources:
        homes = [j for j, w in enumerate(outer.sources) if d.below(s, w)]
        if len(homes) != 1:
            return None
        blocks[homes[0]].append(s)
    if any(not b for b in blocks):
        return None
    return blocks


def _composite_column(d: PrefactData, direct: StructureMap, outer: StructureMap,
                      inners: List[Optional[StructureMap]], n: int, x: Basis) -> Dict[int, Fraction]:
    order = [s for j, w in enumerate(outer.sources)
             for s in (inners[j].sources if inners[j] else (w,))]
    sign, y = reorder(x, [direct.sources.index(s) for s in order])
    pieces, offset = [], 0
    for j, w in enumerate(outer.sources):
        inner = inners[j]
        width = len(inner.sources) if inner else 1
        block = y[offset:offset + width]
        offset += width
        degree = sum(deg for deg, _ in block)
        if inner is None:
            pieces.append([((degree, block[0][1]), Fraction(1))])
        else:
            pieces.append([((degree, r), v) for r, v in _column(d, inner, degree, block).items()])
    result: Dict[int, Fraction] = {}
    for combination in product(*pieces):
        z = tuple(element for element, _ in combination)
        coefficient = Fraction(sign)
        for _, v in combination:
            coefficient *= v
        add_into(result, _column(d, outer, n, z), coefficient)
    return result


def _check_associativity(d: PrefactData, report: PrefactReport) -> None:
    for direct in d.maps:
        for outer in d.maps:
            if outer is direct or outer.target != direct.target:
                continue
            if frozenset(outer.sources) == frozenset(direct.sources):
                continue
            blocks = _blocks(d, direct, outer)
            if blocks is None:
                continue
            inners: List[Optional[StructureMap]] = []
            for w, block in zip(outer.sources, blocks):
                if block == [w]:
                    inners.append(None)
                    continue
                candidates = d.maps_on(frozenset(block), w)
                if not candidates:
                    break
                inners.append(candidates[0])
            if len(inners) != len(blocks):
                continue
            tensor = d.tensor(direct.sources)
            for n in tensor.degrees():
                report.checked['associativity'] += 1
                for x in tensor.basis(n):
                    if _composite_column(d, direct, outer, inners, n, x) != _column(d, direct, n, x):
                        report.failures.append({
                            'kind': 'associativity', 'direct': direct.label, 'through': outer.label,
                            'inner': [m.label for m in inners if m], 'degree': n,
                        })
                        break


def prefact_check(d: PrefactData) -> PrefactReport:
    """
    Invariance under reordering of each disjoint family present in more than one
    order, the chain-map property of every structure map, and agreement of every
    direct map with its composites through intermediate opens.
    """
    StructureValidator.require(validate_prefact(d), f"prefactorization data {d.name}", VALIDATION_ERROR)
    report = PrefactReport(d.name)
    _check_permutations(d, report)
    _check_chain_maps(d, report)
    _check_associativity(d, report)
    logger.debug(f"prefact {d.name}: {report.checked}, {len(report.failures)} failures")
    return report


# Classical observables on a disjoint-union model

@dataclass
class ObsModel:
    """Patches with the dimension of 𝔤(patch)¹, and opens given as unions of patches."""

    patches: Dict[str, int]
    opens: Dict[str, Tuple[str, ...]]
    name: str = 'obs'

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = None) -> 'ObsModel':
        """
        ``{"patches": {name: dim | "torus_gca(1)*abelian(1)"}, "opens": {name: [patches]}}``;
        every patch is also an open of its own.
        """
        try:
            patches = {str(p): _patch_dim(v) for p, v in data['patches'].items()}
        except (KeyError, AttributeError):
            raise ParseError("observable model needs 'patches'", file=source)
        opens = {p: (p,) for p in patches}
        for u, members in (data.get('opens') or {}).items():
            opens[str(u)] = tuple(sorted(str(m) for m in members))
        return cls(patches, opens, name=data.get('name', source or 'obs'))


def _patch_dim(value: Union[int, str]) -> int:
    if isinstance(value, bool):
        raise ParseError(f"patch dimension must be an integer or a DGLA reference, got {value!r}")
    if isinstance(value, int):
        return value
    dgla = resolve_dgla(str(value))
    return len(dgla.component(1))


def _check_model(model: ObsModel) -> None:
    seen: Dict[FrozenSet[str], str] = {}
    for u, members in model.opens.items():
        unknown = [p for p in members if p not in model.patches]
        if not members or unknown:
            raise DeskError(NOT_DISJOINT_POSET, f"open {u} is not a nonempty union of patches",
                            {'open': u, 'unknown': unknown})
        key = frozenset(members)
        if len(key) != len(members):
            raise DeskError(NOT_DISJOINT_POSET, f"open {u} repeats a patch", {'open': u})
        if key in seen:
            raise DeskError(NOT_DISJOINT_POSET, f"opens {seen[key]} and {u} are the same union",
                            {'opens': [seen[key], u]})
        seen[key] = u
    negative = [p for p, n in model.patches.items() if n < 0]
    if negative:
        raise DeskError(NOT_DISJOINT_POSET, "patch dimensions must be nonnegative", {'patches': negative})


def _monomials(variables: int, bound: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of total degree ≤ bound, by degree then descending lex."""
    result = []
    for total in range(bound + 1):
        level = [e for e in product(range(total + 1), repeat=variables) if sum(e) == total]
        result.extend(sorted(level, reverse=True))
    return result


def _variables(model: ObsModel, u: str) -> List[str]:
    return [f"{p}.{i}" for p in sorted(model.opens[u]) for i in range(model.patches[p])]


def _monomial_label(variables: Sequence[str], exponents: Sequence[int]) -> str:
    factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exponents) if e]
    return '*'.join(factors) or '1'


def obs_assignment(model: ObsModel, degree_bound: int, max_family: int = 3) -> PrefactData:
    """
    Obs(U) = polynomials of degree ≤ D on 𝔤(U)¹, concentrated in degree 0. The
    structure map of a disjoint family multiplies the pulled-back polynomials and
    truncates above D. Families of up to ``max_family`` opens are listed in every order.

    Raises:
        DeskError: NOT_DISJOINT_POSET for opens that are not distinct unions of patches
        DeskError: DEGREE_BOUND_EXCEEDED when D exceeds the configured maximum
    """
    if degree_bound < 0 or degree_bound > Config.MAX_POLY_DEGREE():
        raise DeskError(DEGREE_BOUND_EXCEEDED, f"degree bound {degree_bound} outside [0, {Config.MAX_POLY_DEGREE()}]")
    _check_model(model)
    opens = sorted(model.opens)
    support = {u: frozenset(model.opens[u]) for u in opens}
    variables = {u: _variables(model, u) for u in opens}
    monomials = {u: _monomials(len(variables[u]), degree_bound) for u in opens}
    complexes = {
        u: CochainComplex(GradedVectorSpace({0: tuple(_monomial_label(variables[u], e) for e in monomials[u])}))
        for u in opens
    }
    order = [(a, b) for a in opens for b in opens if a != b and support[a] <= support[b]]
    disjoint = [(a, b) for a, b in combinations(opens, 2) if not support[a] & support[b]]

    def embed(u: str, v: str, exponents: Tuple[int, ...]) -> Dict[str, int]:
        return {name: e for name, e in zip(variables[u], exponents) if e}

    maps = []
    for v in opens:
        inside = [u for u in opens if support[u] <= support[v]]
        position = {e: i for i, e in enumerate(monomials[v])}
        for size in range(1, max_family + 1):
            for family in combinations(inside, size):
                if size == 1 and family[0] == v:
                    continue
                if any(support[a] & support[b] for a, b in combinations(family, 2)):
                    continue
                for ordering in permutations(family):
                    columns = []
                    for choice in product(*[monomials[u] for u in ordering]):
                        powers: Dict[str, int] = {}
                        for u, e in zip(ordering, choice):
                            powers.update(embed(u, v, e))
                        exponents = tuple(powers.get(name, 0) for name in variables[v])
                        columns.append({position[exponents]: Fraction(1)} if exponents in position else {})
                    matrix = _from_columns(columns, len(monomials[v]))
                    maps.append(StructureMap(tuple(ordering), v, {0: matrix}))
    logger.debug(f"obs {model.name}: {len(opens)} opens, {len(maps)} structure maps, D = {degree_bound}")
    return PrefactData(opens, order, disjoint, complexes, maps, name=f"Obs({model.name}, D={degree_bound})")
