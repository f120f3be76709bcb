"""
Finite graded-commutative algebras: finite models of de Rham complexes.
"""
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from src.foundation import Matrix, add_into, cleaned
from src.utils.errors import DeskError, ParseError, INVALID_INPUT
from src.utils.validation import InputValidator


class GCA:
    """
    Graded-commutative algebra on an explicit basis.

    ``products[(i, j)]`` is a_i·a_j as a sparse vector (absent means zero),
    ``differential[i]`` is d(a_i) (absent means zero) and ``integration[i]`` is ∫a_i.
    The unit is the basis element at index ``unit``.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int],
                 products: Mapping[Tuple[int, int], Mapping[int, Any]],
                 differential: Optional[Mapping[int, Mapping[int, Any]]] = None,
                 integration: Optional[Mapping[int, Any]] = None,
                 unit: int = 0, name: str = 'gca'):
        if len(names) != len(degrees):
            raise DeskError(INVALID_INPUT, "GCA names and degrees differ in length")
        if len(set(names)) != len(names):
            raise DeskError(INVALID_INPUT, "duplicate GCA basis names")
        self.names = tuple(str(n) for n in names)
        self.degrees = tuple(int(d) for d in degrees)
        self.name = name
        self.unit = unit
        n = len(self.names)
        self.products = {}
        for (i, j), value in products.items():
            if not (0 <= i < n and 0 <= j < n) or any(not (0 <= k < n) for k in value):
                raise DeskError(INVALID_INPUT, f"product entry ({i}, {j}) out of range")
            value = cleaned(value)
            if value:
                self.products[(i, j)] = value
        self.differential = {i: cleaned(v) for i, v in (differential or {}).items() if cleaned(v)}
        self.integration = {i: Fraction(v) for i, v in (integration or {}).items() if v}
        self.has_differential = bool(self.differential)
        self.has_integration = bool(self.integration)

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DeskError(INVALID_INPUT, f"{name!r} is not a basis element of {self.name}")

    def basis_in_degree(self, degree: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def degree_range(self) -> Tuple[int, int]:
        return min(self.degrees), max(self.degrees)

    def top_degree(self) -> int:
        return max(self.degrees)

    def product_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        if i == self.unit:
            return {j: Fraction(1)}
        if j == self.unit:
            return {i: Fraction(1)}
        return self.products.get((i, j), {})

    def raw_product(self, i: int, j: int) -> Dict[int, Fraction]:
        """Table entry as supplied, without unit shortcuts (used by the validator)."""
        return self.products.get((i, j), {})

    def multiply(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        result: Dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                add_into(result, self.product_basis(i, j), a * b)
        return result

    def d(self, u: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        result: Dict[int, Fraction] = {}
        for i, a in u.items():
            image = self.differential.get(i)
            if image:
                add_into(result, image, a)
        return result

    def integrate(self, u: Mapping[int, Fraction]) -> Fraction:
        return sum((a * self.integration.get(i, 0) for i, a in u.items()), Fraction(0))

    def differential_matrix(self, degree: int) -> Matrix:
        source = self.basis_in_degree(degree)
        target = self.basis_in_degree(degree + 1)
        data = [[self.differential.get(s, {}).get(t, Fraction(0)) for s in source] for t in target]
        return Matrix(len(target), len(source), data)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = None) -> 'GCA':
        """
        File format: ``{"basis": [{"name", "degree"}], "products": {"x,y": {name: c}},
        "differential": {name: {name: c}}, "integration": {name: c}}``.
        The unit is the first degree-0 element named "1", else the first element.
        """
        try:
            names = [str(entry['name']) for entry in data['basis']]
            degrees = [int(entry['degree']) for entry in data['basis']]
        except (KeyError, TypeError, ValueError):
            raise ParseError("GCA file needs a 'basis' of {name, degree} entries", file=source)

        def idx(token):
            token = token.strip()
            if token not in names:
                raise ParseError(f"unknown GCA basis element {token!r}", file=source)
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
        integration = vec(data.get('integration') or {})
        unit = names.index('1') if '1' in names else 0
        return cls(names, degrees, products, differential, integration, unit=unit,
                   name=str(data.get('name', source or 'gca')))
