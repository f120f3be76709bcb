"""
The simplex category Δ: order-preserving maps [n] → [m], cofaces and codegeneracies.

Two coface conventions are supported. STANDARD δ_i skips the value i. PRINTED follows
the formula "j if j ≤ i, j+1 otherwise", which skips i+1 (and for i ≥ n−1 is the
inclusion missing n); it is kept for comparison and as a negative control.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from typing import Iterator, Optional, Tuple, Union

from src.config import Config
from src.utils.errors import DeskError, COMPOSE_MISMATCH, INDEX_OUT_OF_RANGE, INVALID_INPUT


class Convention(str, Enum):
    STANDARD = 'standard'
    PRINTED = 'printed'

    @classmethod
    def resolve(cls, value: Union[None, str, 'Convention']) -> 'Convention':
        if value is None:
            value = Config.SIMPLICIAL_CONVENTION()
        try:
            return cls(value)
        except ValueError:
            raise DeskError(INVALID_INPUT, f"unknown simplicial convention {value!r}",
                            {'known': [c.value for c in cls]})


@dataclass(frozen=True)
class OrdinalMap:
    """Non-decreasing map [source] → [target] given by its values on 0..source."""

    source: int
    target: int
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, 'values', values)
        if self.source < 0 or self.target < 0 or len(values) != self.source + 1:
            raise DeskError(INVALID_INPUT, f"map [{self.source}] → [{self.target}] needs {self.source + 1} values")
        if any(not (0 <= v <= self.target) for v in values):
            raise DeskError(INVALID_INPUT, f"values {values} leave [0, {self.target}]")
        if any(a > b for a, b in zip(values, values[1:])):
            raise DeskError(INVALID_INPUT, f"values {values} are not non-decreasing")

    def __call__(self, j: int) -> int:
        return self.values[j]

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.values == tuple(range(self.source + 1))

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target + 1))

    def __str__(self) -> str:
        return f"[{self.source}]→[{self.target}] {self.values}"


def identity(n: int) -> OrdinalMap:
    return OrdinalMap(n, n, tuple(range(n + 1)))


def coface(n: int, i: int, convention: Optional[Convention] = None) -> OrdinalMap:
    """d_i^n : [n−1] → [n] for 0 ≤ i ≤ n."""
    convention = Convention.resolve(convention)
    if n < 1 or not (0 <= i <= n):
        raise DeskError(INDEX_OUT_OF_RANGE, f"coface d_{i}^{n} needs n >= 1 and 0 <= i <= n",
                        {'n': n, 'i': i})
    if convention is Convention.STANDARD:
        values = tuple(j if j < i else j + 1 for j in range(n))
    else:
        values = tuple(j if j <= i else j + 1 for j in range(n))
    return OrdinalMap(n - 1, n, values)


def codegeneracy(n: int, i: int) -> OrdinalMap:
    """s_i^n : [n+1] → [n] for 0 ≤ i ≤ n, hitting i twice."""
    if n < 0 or not (0 <= i <= n):
        raise DeskError(INDEX_OUT_OF_RANGE, f"codegeneracy s_{i}^{n} needs 0 <= i <= n",
                        {'n': n, 'i': i})
    return OrdinalMap(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def compose(f: OrdinalMap, g: OrdinalMap) -> OrdinalMap:
    """f ∘ g."""
    if g.target != f.source:
        raise DeskError(COMPOSE_MISMATCH, f"cannot compose {f} after {g}",
                        {'left_source': f.source, 'right_target': g.target})
    return OrdinalMap(g.source, f.target, tuple(f(v) for v in g.values))


def all_maps(source: int, target: int) -> Iterator[OrdinalMap]:
    """Every order-preserving map [source] → [target], lexicographically."""
    for values in combinations_with_replacement(range(target + 1), source + 1):
        yield OrdinalMap(source, target, values)
