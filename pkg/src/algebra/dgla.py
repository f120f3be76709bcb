"""
The DGLA 𝔤 = A ⊗ 𝔥 of a graded-commutative algebra and a Lie algebra.
"""
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from src.foundation import Matrix, add_into
from src.utils.errors import DeskError, INVALID_INPUT
from src.utils.validation import InputValidator
from .gca import GCA
from .lie import LieAlgebra

Element = Dict[int, Fraction]


class DGLA:
    """
    Basis a_p ⊗ x_j sits at index ``p * dim(lie) + j`` with degree deg(a_p).

    [a⊗X, b⊗Y] = (ab)⊗[X,Y] and d(a⊗X) = (da)⊗X, plus [∇, ·] when twisted by a
    background Maurer–Cartan element ∇.
    """

    def __init__(self, gca: GCA, lie: LieAlgebra, twist: Optional[Element] = None):
        self.gca = gca
        self.lie = lie
        self.twist = dict(twist) if twist else None
        self.name = f"{gca.name}*{lie.name}" + ("~" if self.twist else "")
        self._bracket_cache: Dict[Tuple[int, int], Element] = {}

    @property
    def dim(self) -> int:
        return self.gca.dim * self.lie.dim

    def split(self, index: int) -> Tuple[int, int]:
        return divmod(index, self.lie.dim)

    def join(self, p: int, j: int) -> int:
        return p * self.lie.dim + j

    def degree(self, index: int) -> int:
        return self.gca.degrees[index // self.lie.dim]

    def label(self, index: int) -> str:
        p, j = self.split(index)
        return f"{self.gca.names[p]}*{self.lie.basis[j]}"

    def index_of(self, gca_name: str, lie_label: str) -> int:
        return self.join(self.gca.index(gca_name), self.lie.index(lie_label))

    def component(self, degree: int) -> List[int]:
        return [i for i in range(self.dim) if self.degree(i) == degree]

    def component_dims(self) -> Dict[int, int]:
        low, high = self.gca.degree_range()
        return {n: len(self.component(n)) for n in range(low, high + 1)}

    def bracket_basis(self, s: int, t: int) -> Element:
        cached = self._bracket_cache.get((s, t))
        if cached is not None:
            return cached
        p, i = self.split(s)
        q, j = self.split(t)
        result: Element = {}
        lie_part = self.lie.bracket_basis(i, j)
        if lie_part:
            for r, a in self.gca.product_basis(p, q).items():
                for k, c in lie_part.items():
                    add_into(result, {self.join(r, k): Fraction(1)}, a * c)
        self._bracket_cache[(s, t)] = result
        return result

    def bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Element:
        result: Element = {}
        for s, a in u.items():
            for t, b in v.items():
                value = self.bracket_basis(s, t)
                if value:
                    add_into(result, value, a * b)
        return result

    def differential_basis(self, s: int) -> Element:
        p, j = self.split(s)
        result: Element = {}
        for r, a in self.gca.differential.get(p, {}).items():
            add_into(result, {self.join(r, j): Fraction(1)}, a)
        if self.twist:
            add_into(result, self.bracket(self.twist, {s: Fraction(1)}))
        return result

    def d(self, u: Mapping[int, Fraction]) -> Element:
        result: Element = {}
        for s, a in u.items():
            add_into(result, self.differential_basis(s), a)
        return result

    def differential_matrix(self, degree: int) -> Matrix:
        source = self.component(degree)
        target = self.component(degree + 1)
        position = {t: r for r, t in enumerate(target)}
        data = [[Fraction(0)] * len(source) for _ in target]
        for c, s in enumerate(source):
            for t, a in self.differential_basis(s).items():
                if t not in position:
                    raise DeskError(INVALID_INPUT, f"differential of {self.label(s)} leaves degree {degree + 1}")
                data[position[t]][c] = a
        return Matrix(len(target), len(source), data)

    def twisted(self, background: Mapping[int, Fraction]) -> 'DGLA':
        """
        The DGLA with differential d + [∇, ·] for a scalar Maurer–Cartan element ∇.

        Raises:
            DeskError: INVALID_INPUT unless ∇ has degree 1 and d∇ + ½[∇,∇] = 0
        """
        background = {k: Fraction(v) for k, v in background.items() if v}
        if any(self.degree(k) != 1 for k in background):
            raise DeskError(INVALID_INPUT, "background connection must have degree 1")
        curvature = self.d(background)
        add_into(curvature, self.bracket(background, background), Fraction(1, 2))
        if curvature:
            raise DeskError(INVALID_INPUT, "background connection is not flat",
                            {'curvature': {self.label(k): str(v) for k, v in sorted(curvature.items())}})
        combined = dict(self.twist or {})
        add_into(combined, background)
        return DGLA(self.gca, self.lie, twist=combined)

    def format(self, u: Mapping[int, Fraction]) -> Dict[str, str]:
        return {self.label(k): InputValidator.format_rational(v) for k, v in sorted(u.items())}


def build_dgla(gca: GCA, lie: LieAlgebra) -> DGLA:
    """
    Tensor a validated GCA with a validated Lie algebra.

    Raises:
        ValidationError: INVALID_INPUT when either validator reports violations
    """
    from .validators import StructureValidator
    StructureValidator.require(StructureValidator.validate_gca(gca), f"GCA {gca.name}", INVALID_INPUT)
    StructureValidator.require(StructureValidator.validate_lie(lie), f"Lie algebra {lie.name}", INVALID_INPUT)
    return DGLA(gca, lie)
