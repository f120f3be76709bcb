"""
Nilpotent dg Artinian coefficient algebras, described by their maximal ideal 𝔪.
"""
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from src.algebra import ValidationReport
from src.foundation import add_into, cleaned, parity_sign
from src.utils.cache import cache_manager
from src.utils.errors import DeskError, ParseError, INVALID_INPUT, UNKNOWN_BUILTIN
from src.utils.logging import logger
from src.utils.validation import InputValidator

ARTINIAN_BUILTINS = ('dual', 'truncated', 'two_variable', 'odd_dual', 'scalar')


class ArtinianAlgebra:
    """
    Basis of 𝔪 with degrees ≤ 0 and a filtration power per basis element
    (element i lies in 𝔪^power[i] and spans a piece of 𝔪^p/𝔪^(p+1)).

    The ground field itself is modelled by ``ArtinianAlgebra.scalar()``: one basis
    element "1" of degree 0 and power 0, with no nilpotency order. It is accepted where
    scalar coefficients are meant and rejected where nilpotency is needed.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int], powers: Sequence[int],
                 products: Mapping[Tuple[int, int], Mapping[int, Any]],
                 nilpotency_order: Optional[int],
                 differential: Optional[Mapping[int, Mapping[int, Any]]] = None,
                 name: str = 'artinian', is_ground: bool = False):
        if not (len(names) == len(degrees) == len(powers)):
            raise DeskError(INVALID_INPUT, "ideal basis names, degrees and powers differ in length")
        if len(set(names)) != len(names):
            raise DeskError(INVALID_INPUT, "duplicate ideal basis names")
        self.names = tuple(str(n) for n in names)
        self.degrees = tuple(int(d) for d in degrees)
        self.powers = tuple(int(p) for p in powers)
        n = len(self.names)
        self.products = {}
        for (i, j), value in products.items():
            if not (0 <= i < n and 0 <= j < n) or any(not (0 <= k < n) for k in value):
                raise DeskError(INVALID_INPUT, f"ideal product ({i}, {j}) out of range")
            if cleaned(value):
                self.products[(i, j)] = cleaned(value)
        self.differential = {i: cleaned(v) for i, v in (differential or {}).items() if cleaned(v)}
        self.nilpotency_order = nilpotency_order
        self.name = name
        self.is_ground = is_ground

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DeskError(INVALID_INPUT, f"{name!r} is not an ideal basis element of {self.name}")

    def product_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        return self.products.get((i, j), {})

    def d_basis(self, i: int) -> Dict[int, Fraction]:
        return self.differential.get(i, {})

    def graded_piece(self, power: int) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.powers) if p == power)

    @classmethod
    def scalar(cls) -> 'ArtinianAlgebra':
        return cls(['1'], [0], [0], {(0, 0): {0: 1}}, None, name='scalar', is_ground=True)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = None) -> 'ArtinianAlgebra':
        """
        File format: ``{"ideal_basis": [{"name", "degree", "power"}],
        "products": {"x,y": {name: c}}, "differential": {...}, "nilpotency_order": N}``.
        """
        try:
            entries = data['ideal_basis']
            names = [str(e['name']) for e in entries]
            degrees = [int(e.get('degree', 0)) for e in entries]
            powers = [int(e.get('power', 1)) for e in entries]
            order = int(data['nilpotency_order'])
        except (KeyError, TypeError, ValueError):
            raise ParseError("Artinian file needs 'ideal_basis' and 'nilpotency_order'", file=source)

        def idx(token):
            token = token.strip()
            if token not in names:
                raise ParseError(f"unknown ideal basis element {token!r}", file=source)
            return names.index(token)

        def vec(raw):
            return {idx(k): InputValidator.parse_rational(c, source) for k, c in raw.items()}

        products = {}
        for key, value in (data.get('products') or {}).items():
            parts = key.split(',')
            if len(parts) != 2:
                raise ParseError(f"product key {key!r} is not a pair", file=source)
            products[(idx(parts[0]), idx(parts[1]))] = vec(value)
        differential = {idx(k): vec(v) for k, v in (data.get('differential') or {}).items()}
        return cls(names, degrees, powers, products, order, differential,
                   name=str(data.get('name', source or 'artinian')))


def dual_numbers() -> ArtinianAlgebra:
    """k[ε]/ε²."""
    return ArtinianAlgebra(['e'], [0], [1], {}, 2, name='dual')


def truncated(n: int) -> ArtinianAlgebra:
    """(t)/(tⁿ) inside k[t]/(tⁿ)."""
    if n < 2:
        raise DeskError(INVALID_INPUT, "truncated(n) needs n >= 2")
    names = ['t' if k == 1 else f"t{k}" for k in range(1, n)]
    products = {(a - 1, b - 1): {a + b - 1: 1} for a in range(1, n) for b in range(1, n) if a + b < n}
    return ArtinianAlgebra(names, [0] * (n - 1), list(range(1, n)), products, n, name=f"truncated({n})")


def two_variable(n: int) -> ArtinianAlgebra:
    """(s, t)/(s, t)ⁿ: monomials s^a t^b with 1 ≤ a + b < n."""
    if n < 2:
        raise DeskError(INVALID_INPUT, "two_variable(n) needs n >= 2")
    monomials = [(a, w - a) for w in range(1, n) for a in range(w, -1, -1)]
    position = {m: i for i, m in enumerate(monomials)}

    def label(m):
        parts = []
        for var, e in zip('st', m):
            if e:
                parts.append(var if e == 1 else f"{var}{e}")
        return ''.join(parts)

    products = {}
    for i, (a, b) in enumerate(monomials):
        for j, (c, e) in enumerate(monomials):
            target = (a + c, b + e)
            if target in position:
                products[(i, j)] = {position[target]: 1}
    return ArtinianAlgebra([label(m) for m in monomials], [0] * len(monomials),
                           [sum(m) for m in monomials], products, n, name=f"two_variable({n})")


def odd_dual() -> ArtinianAlgebra:
    """k[η]/η² with deg η = −1."""
    return ArtinianAlgebra(['eta'], [-1], [1], {}, 2, name='odd_dual')


def artinian_builtin(name: str, params: Sequence[str] = ()) -> ArtinianAlgebra:
    key = f"{name}({','.join(params)})"
    return cache_manager.get_or_create('builtin.artinian', key, lambda: _make(name, params))


def _make(name: str, params: Sequence[str]) -> ArtinianAlgebra:
    if name in ('dual', 'odd_dual', 'scalar') and params:
        raise DeskError(UNKNOWN_BUILTIN, f"{name} takes no parameters")
    if name == 'dual':
        return dual_numbers()
    if name == 'odd_dual':
        return odd_dual()
    if name == 'scalar':
        return ArtinianAlgebra.scalar()
    if name in ('truncated', 'two_variable'):
        if len(params) != 1 or not params[0].isdigit():
            raise DeskError(UNKNOWN_BUILTIN, f"{name} takes one integer parameter")
        return truncated(int(params[0])) if name == 'truncated' else two_variable(int(params[0]))
    raise DeskError(UNKNOWN_BUILTIN, f"unknown Artinian builtin {name!r}", {'known': list(ARTINIAN_BUILTINS)})


def validate_artinian(algebra: ArtinianAlgebra) -> ValidationReport:
    """
    Degrees ≤ 0, filtration powers in 1..N−1, products respecting degree and filtration,
    graded commutativity, associativity, and d² = 0 / Leibniz / filtration for d.
    Nilpotency follows from the filtration bound.
    """
    report = ValidationReport(subject=algebra.name)
    if algebra.is_ground:
        return report
    n = algebra.dim
    names, deg, power = algebra.names, algebra.degrees, algebra.powers
    order = algebra.nilpotency_order
    if order is None or order < 2:
        report.add('nilpotency_order', value=order)
        return report
    for i in range(n):
        if deg[i] > 0:
            report.add('positive_degree', element=names[i])
        if not (1 <= power[i] < order):
            report.add('power_range', element=names[i], power=power[i])
    for (i, j), value in sorted(algebra.products.items()):
        for k in value:
            if deg[k] != deg[i] + deg[j]:
                report.add('degree', pair=[names[i], names[j]])
            if power[k] < power[i] + power[j]:
                report.add('filtration', pair=[names[i], names[j]])
    for i, j in product(range(n), repeat=2):
        report.checked += 1
        residual = add_into(dict(algebra.product_basis(i, j)), algebra.product_basis(j, i),
                            -parity_sign(deg[i] * deg[j]))
        if residual:
            report.add('graded_commutativity', pair=[names[i], names[j]])
    for i, j, k in product(range(n), repeat=3):
        report.checked += 1
        left: Dict[int, Fraction] = {}
        for r, a in algebra.product_basis(i, j).items():
            add_into(left, algebra.product_basis(r, k), a)
        for r, a in algebra.product_basis(j, k).items():
            add_into(left, algebra.product_basis(i, r), -a)
        if left:
            report.add('associativity', triple=[names[i], names[j], names[k]])
    for i, value in sorted(algebra.differential.items()):
        for k in value:
            if deg[k] != deg[i] + 1:
                report.add('differential_degree', element=names[i])
            if power[k] < power[i]:
                report.add('differential_filtration', element=names[i])
        squared: Dict[int, Fraction] = {}
        for r, a in value.items():
            add_into(squared, algebra.d_basis(r), a)
        if squared:
            report.add('d_squared', element=names[i])
    if algebra.differential:
        for i, j in product(range(n), repeat=2):
            left: Dict[int, Fraction] = {}
            for r, a in algebra.product_basis(i, j).items():
                add_into(left, algebra.d_basis(r), a)
            for r, a in algebra.d_basis(i).items():
                add_into(left, algebra.product_basis(r, j), -a)
            for r, a in algebra.d_basis(j).items():
                add_into(left, algebra.product_basis(i, r), -parity_sign(deg[i]) * a)
            if left:
                report.add('leibniz', pair=[names[i], names[j]])
    if not report.ok:
        logger.warning(f"Artinian algebra {algebra.name}: {len(report.issues)} violations")
    return report
