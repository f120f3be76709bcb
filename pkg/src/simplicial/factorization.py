"""
Epi–mono factorization of ordinal maps into codegeneracies followed by cofaces.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.utils.errors import DeskError, INDEX_OUT_OF_RANGE
from .ordinals import Convention, OrdinalMap, codegeneracy, coface, compose, identity

Step = Tuple[int, int]


@dataclass
class Factorization:
    """
    ``codegeneracies`` and ``cofaces`` are (superscript, index) pairs in application
    order: f = d_last ∘ … ∘ d_first ∘ s_last ∘ … ∘ s_first.
    """

    source: int
    convention: Convention
    codegeneracies: List[Step] = field(default_factory=list)
    cofaces: List[Step] = field(default_factory=list)

    def surjection(self) -> OrdinalMap:
        result = identity(self.source)
        for n, i in self.codegeneracies:
            result = compose(codegeneracy(n, i), result)
        return result

    def composite(self) -> OrdinalMap:
        result = self.surjection()
        for n, i in self.cofaces:
            result = compose(coface(n, i, self.convention), result)
        return result

    def to_payload(self) -> Dict[str, Any]:
        return {
            'convention': self.convention.value,
            'codegeneracies': [f"s{i}^{n}" for n, i in self.codegeneracies],
            'cofaces': [f"d{i}^{n}" for n, i in self.cofaces],
        }


def epi_mono_factor(f: OrdinalMap, convention: Optional[Convention] = None) -> Factorization:
    """
    Codegeneracies s_j for every j with f(j) = f(j+1), applied with j decreasing, then
    one coface per value missed by f, applied with the missed value increasing.

    Under the PRINTED convention the coface missing value k is d_{k−1}; a map that
    misses 0 has no such factorization.

    Raises:
        DeskError: INDEX_OUT_OF_RANGE for a map missing 0 under PRINTED
    """
    convention = Convention.resolve(convention)
    result = Factorization(f.source, convention)
    level = f.source
    for j in reversed(range(f.source)):
        if f(j) == f(j + 1):
            level -= 1
            result.codegeneracies.append((level, j))
    missing = sorted(set(range(f.target + 1)) - set(f.values))
    for k in missing:
        level += 1
        if convention is Convention.STANDARD:
            result.cofaces.append((level, k))
        elif k == 0:
            raise DeskError(INDEX_OUT_OF_RANGE, f"no printed coface misses 0; cannot factor {f}",
                            {'values': list(f.values)})
        else:
            result.cofaces.append((level, k - 1))
    return result
