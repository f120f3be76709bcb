"""
Elements of the triple tensor complex 𝔤 ⊗ 𝔪 ⊗ Ω(Δⁿ) for n ∈ {0, 1}.

A basis key is ``(s, m, (k, e))``: DGLA basis index s, ideal basis index m, and the
polynomial form t^k dt^e on the interval (always (0, 0) when n = 0).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from src.algebra import DGLA
from src.foundation import add_into, parity_sign
from src.utils.errors import DeskError, ParseError, INVALID_INPUT, TYPE_MISMATCH
from src.utils.validation import InputValidator
from .artinian import ArtinianAlgebra

Form = Tuple[int, int]
Key = Tuple[int, int, Form]
CONSTANT: Form = (0, 0)


def form_label(form: Form) -> str:
    k, e = form
    power = '' if k == 0 else ('t' if k == 1 else f"t{k}")
    if e:
        return f"{power}dt"
    return power or '1'


def parse_form(text: str) -> Form:
    text = text.strip()
    e = 0
    if text.endswith('dt'):
        e, text = 1, text[:-2]
    if text in ('', '1'):
        return (0, e)
    if text == 't':
        return (1, e)
    if text.startswith('t') and text[1:].isdigit():
        return (int(text[1:]), e)
    raise ParseError(f"malformed polynomial form {text!r}")


class DeformationSpace:
    """
    Bracket and total differential of 𝔤 ⊗ 𝔪 ⊗ Ω(Δⁿ) with Koszul signs:

    [X⊗m⊗ω, Y⊗n⊗η] = (−1)^{|ω|(|Y|+|n|) + |m||Y|} [X,Y] ⊗ mn ⊗ ωη
    d_tot = d_𝔤 ⊗ 1 ⊗ 1 + (−1)^p 1 ⊗ d_𝔪 ⊗ 1 + (−1)^{p+q} 1 ⊗ 1 ⊗ d_Δ
    """

    def __init__(self, dgla: DGLA, coefficients: ArtinianAlgebra, simplex: int = 0):
        if simplex not in (0, 1):
            raise DeskError(INVALID_INPUT, "only 0- and 1-simplices are supported")
        self.dgla = dgla
        self.coefficients = coefficients
        self.simplex = simplex

    def degree(self, key: Key) -> int:
        s, m, (_, e) = key
        return self.dgla.degree(s) + self.coefficients.degrees[m] + e

    def power(self, key: Key) -> int:
        return self.coefficients.powers[key[1]]

    def element(self, terms: Optional[Mapping[Key, Any]] = None) -> 'TensorElement':
        return TensorElement(self, {k: Fraction(v) for k, v in (terms or {}).items() if v})

    def zero(self) -> 'TensorElement':
        return TensorElement(self, {})

    def key(self, gca_name: str, lie_label: str, ideal: Optional[str] = None, form: Form = CONSTANT) -> Key:
        if ideal is None:
            if not self.coefficients.is_ground:
                raise DeskError(TYPE_MISMATCH, "an ideal basis element is required for nilpotent coefficients")
            ideal = '1'
        if form != CONSTANT and self.simplex == 0:
            raise DeskError(TYPE_MISMATCH, "polynomial forms need the 1-simplex space")
        return (self.dgla.index_of(gca_name, lie_label), self.coefficients.index(ideal), form)

    def from_terms(self, terms: Iterable[Tuple[Tuple[str, ...], Fraction]]) -> 'TensorElement':
        """Terms from ``InputValidator.parse_terms``: labels (gca, lie[, ideal[, form]])."""
        result: Dict[Key, Fraction] = {}
        for labels, coefficient in terms:
            if len(labels) < 2 or len(labels) > 4:
                raise ParseError(f"term {':'.join(labels)!r} needs gca:lie[:ideal[:form]]")
            ideal = labels[2] if len(labels) > 2 else None
            form = parse_form(labels[3]) if len(labels) > 3 else CONSTANT
            add_into(result, {self.key(labels[0], labels[1], ideal, form): coefficient})
        return TensorElement(self, result)

    def _form_product(self, left: Form, right: Form) -> Optional[Form]:
        if left[1] + right[1] > 1:
            return None
        return (left[0] + right[0], left[1] + right[1])

    def bracket_keys(self, a: Key, b: Key) -> Dict[Key, Fraction]:
        s, m, omega = a
        t, n, eta = b
        lie_part = self.dgla.bracket_basis(s, t)
        if not lie_part:
            return {}
        coefficient_part = self.coefficients.product_basis(m, n)
        if not coefficient_part:
            return {}
        form = self._form_product(omega, eta)
        if form is None:
            return {}
        deg_y = self.dgla.degree(t)
        deg_n = self.coefficients.degrees[n]
        sign = parity_sign(omega[1] * (deg_y + deg_n) + self.coefficients.degrees[m] * deg_y)
        result: Dict[Key, Fraction] = {}
        for r, x in lie_part.items():
            for q, y in coefficient_part.items():
                add_into(result, {(r, q, form): Fraction(1)}, sign * x * y)
        return result

    def bracket(self, u: 'TensorElement', v: 'TensorElement') -> 'TensorElement':
        self._check(u)
        self._check(v)
        result: Dict[Key, Fraction] = {}
        for a, x in u.terms.items():
            for b, y in v.terms.items():
                value = self.bracket_keys(a, b)
                if value:
                    add_into(result, value, x * y)
        return TensorElement(self, result)

    def differential_keys(self, key: Key, include_simplex: bool = True) -> Dict[Key, Fraction]:
        s, m, form = key
        result: Dict[Key, Fraction] = {}
        for r, x in self.dgla.differential_basis(s).items():
            add_into(result, {(r, m, form): Fraction(1)}, x)
        p = self.dgla.degree(s)
        for q, y in self.coefficients.d_basis(m).items():
            add_into(result, {(s, q, form): Fraction(1)}, parity_sign(p) * y)
        k, e = form
        if include_simplex and e == 0 and k > 0:
            sign = parity_sign(p + self.coefficients.degrees[m])
            add_into(result, {(s, m, (k - 1, 1)): Fraction(1)}, sign * k)
        return result

    def d(self, u: 'TensorElement', include_simplex: bool = True) -> 'TensorElement':
        self._check(u)
        result: Dict[Key, Fraction] = {}
        for key, x in u.terms.items():
            add_into(result, self.differential_keys(key, include_simplex), x)
        return TensorElement(self, result)

    def _check(self, u: 'TensorElement') -> None:
        if u.space is not self:
            raise DeskError(TYPE_MISMATCH, "element belongs to a different DGLA or coefficient algebra")

    def basis_in_degree(self, degree: int, powers: Optional[Iterable[int]] = None) -> List[Key]:
        """Constant-form keys of the given total degree, optionally restricted to filtration powers."""
        allowed = set(powers) if powers is not None else None
        keys = []
        for m in range(self.coefficients.dim):
            if allowed is not None and self.coefficients.powers[m] not in allowed:
                continue
            for s in range(self.dgla.dim):
                key = (s, m, CONSTANT)
                if self.degree(key) == degree:
                    keys.append(key)
        return sorted(keys)

    def label(self, key: Key) -> str:
        s, m, form = key
        parts = [self.dgla.label(s), self.coefficients.names[m]]
        if self.simplex:
            parts.append(form_label(form))
        return '@'.join(parts)


@dataclass(frozen=True)
class TensorElement:
    """Sparse rational combination of basis keys of a ``DeformationSpace``."""

    space: DeformationSpace
    terms: Dict[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'terms', {k: Fraction(v) for k, v in self.terms.items() if v})

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        return TensorElement(self.space, add_into(dict(self.terms), other.terms))

    def __sub__(self, other: 'TensorElement') -> 'TensorElement':
        return TensorElement(self.space, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self) -> 'TensorElement':
        return self.scale(-1)

    def scale(self, factor) -> 'TensorElement':
        factor = Fraction(factor)
        return TensorElement(self.space, {k: factor * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.space is other.space and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {self.space.degree(k) for k in self.terms}

    def require_degree(self, degree: int, what: str = 'element') -> 'TensorElement':
        wrong = [self.space.label(k) for k in self.terms if self.space.degree(k) != degree]
        if wrong:
            raise DeskError(TYPE_MISMATCH, f"{what} must have total degree {degree}", {'terms': sorted(wrong)})
        return self

    def order(self) -> Optional[int]:
        """Lowest filtration power among the terms, None for zero."""
        if not self.terms:
            return None
        return min(self.space.power(k) for k in self.terms)

    def in_power(self, k: int) -> bool:
        return all(self.space.power(key) >= k for key in self.terms)

    def project_power(self, k: int) -> 'TensorElement':
        return TensorElement(self.space, {key: v for key, v in self.terms.items() if self.space.power(key) == k})

    def project(self, keep) -> 'TensorElement':
        return TensorElement(self.space, {key: v for key, v in self.terms.items() if keep(key)})

    def dgla_vector(self) -> Dict[int, Fraction]:
        """Scalar coefficients, constant form: the underlying DGLA vector."""
        if not self.space.coefficients.is_ground or any(k[2] != CONSTANT for k in self.terms):
            raise DeskError(TYPE_MISMATCH, "expected an element with scalar constant coefficients")
        return {k[0]: v for k, v in self.terms.items()}

    def to_payload(self) -> List[Dict[str, str]]:
        rows = []
        for key, value in sorted(self.terms.items()):
            s, m, form = key
            p, j = self.space.dgla.split(s)
            row = {
                'gca': self.space.dgla.gca.names[p],
                'lie': self.space.dgla.lie.basis[j],
                'ideal': self.space.coefficients.names[m],
                'coeff': InputValidator.format_rational(value),
            }
            if self.space.simplex:
                row['form'] = form_label(form)
            rows.append(row)
        return rows

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return ' + '.join(f"{InputValidator.format_rational(v)}*{self.space.label(k)}"
                          for k, v in sorted(self.terms.items()))


MCElement = TensorElement


def element_from_payload(space: DeformationSpace, rows: Iterable[Mapping[str, Any]], source: str = None) -> TensorElement:
    """Inverse of ``TensorElement.to_payload`` (the MC element file format)."""
    terms = []
    for row in rows:
        try:
            labels = [str(row['gca']), str(row['lie'])]
        except (KeyError, TypeError):
            raise ParseError("element terms need 'gca' and 'lie'", file=source)
        labels.append(str(row.get('ideal', '1')))
        if 'form' in row:
            labels.append(str(row['form']))
        terms.append((tuple(labels), InputValidator.parse_rational(row.get('coeff', 1), source)))
    return space.from_terms(terms)
