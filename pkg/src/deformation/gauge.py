"""
Gauge action of degree-0 elements and verification of gauge paths over the interval.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, Optional

from src.config import Config
from src.utils.errors import DeskError, DEGREE_BOUND_EXCEEDED, TYPE_MISMATCH
from .elements import CONSTANT, DeformationSpace, TensorElement
from .maurer_cartan import _require_nilpotent, mc_defect


def _ad_series(space: DeformationSpace, x: TensorElement, start: TensorElement, shift: int) -> TensorElement:
    """Σ_k (ad_x)^k(start) / (k + shift)!; terminates because ad_x raises the filtration."""
    total = space.zero()
    term = start
    k = 0
    while not term.is_zero():
        total = total + term.scale(Fraction(1, factorial(k + shift)))
        term = space.bracket(x, term)
        k += 1
    return total


def gauge_act(space: DeformationSpace, x: TensorElement, alpha: TensorElement) -> TensorElement:
    """
    e^{ad_x}(α) − Σ_k (ad_x)^k / (k+1)! (d_tot x).

    Raises:
        DeskError: TYPE_MISMATCH for wrong degrees or non-nilpotent coefficients
    """
    _require_nilpotent(space)
    x.require_degree(0, 'gauge parameter')
    alpha.require_degree(1, 'Maurer–Cartan element')
    return _ad_series(space, x, alpha, 0) - _ad_series(space, x, space.d(x), 1)


def exp_ad(space: DeformationSpace, x: TensorElement, y: TensorElement) -> TensorElement:
    """e^{ad_x}(y)."""
    _require_nilpotent(space)
    return _ad_series(space, x, y, 0)


@dataclass
class PolyPath:
    """A = A₀(t) + A₁(t)·dt on the 1-simplex, both parts stored with t^k (no dt) forms."""

    a0: TensorElement
    a1: TensorElement

    def validate(self, bound: Optional[int] = None) -> None:
        bound = Config.MAX_POLY_DEGREE() if bound is None else bound
        space = self.a0.space
        if space.simplex != 1 or self.a1.space is not space:
            raise DeskError(TYPE_MISMATCH, "path components must live in the same 1-simplex space")
        for part, degree, name in ((self.a0, 1, 'A0'), (self.a1, 0, 'A1')):
            part.require_degree(degree, name)
            if any(key[2][1] for key in part.terms):
                raise DeskError(TYPE_MISMATCH, f"{name} must not contain dt terms")
            highest = max((key[2][0] for key in part.terms), default=0)
            if highest > bound:
                raise DeskError(DEGREE_BOUND_EXCEEDED, f"{name} has polynomial degree {highest} > {bound}",
                                {'component': name, 'degree': highest, 'bound': bound})

    def combined(self) -> TensorElement:
        """A₀ + A₁·dt as one element of the triple complex."""
        space = self.a0.space
        with_dt = {(s, m, (k, 1)): v for (s, m, (k, _)), v in self.a1.terms.items()}
        return self.a0 + space.element(with_dt)


def _t_derivative(element: TensorElement) -> TensorElement:
    terms = {}
    for (s, m, (k, e)), value in element.terms.items():
        if k > 0:
            terms[(s, m, (k - 1, e))] = value * k
    return element.space.element(terms)


def _verdict(residual: TensorElement) -> Dict[str, Any]:
    rows = residual.to_payload()
    return {
        'holds': residual.is_zero(),
        'first_failure': rows[0] if rows else None,
        'residual': rows,
    }


def gauge_path_check(path: PolyPath, bound: Optional[int] = None) -> Dict[str, Any]:
    """
    Verify, as polynomial identities in t:
    (i) flatness d A₀(t) + ½[A₀(t), A₀(t)] = 0,
    (ii) dA₀/dt + [A₁(t), A₀(t)] = 0,
    and additionally whether A₀ + A₁·dt is Maurer–Cartan in the triple complex.
    """
    path.validate(bound)
    space = path.a0.space
    flatness = space.d(path.a0, include_simplex=False) + space.bracket(path.a0, path.a0).scale(Fraction(1, 2))
    homotopy = _t_derivative(path.a0) + space.bracket(path.a1, path.a0)
    total = mc_defect(space, path.combined())
    return {
        'flatness': _verdict(flatness),
        'homotopy': _verdict(homotopy),
        'total': _verdict(total),
        'holds': flatness.is_zero() and homotopy.is_zero(),
    }


def constant_path(space: DeformationSpace, a0: TensorElement) -> PolyPath:
    """The constant family at a 0-simplex element, transported into the 1-simplex space."""
    if any(key[2] != CONSTANT for key in a0.terms):
        raise DeskError(TYPE_MISMATCH, "constant path needs a 0-simplex element")
    return PolyPath(space.element(a0.terms), space.zero())
