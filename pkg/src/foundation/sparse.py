"""
Sparse rational vectors keyed by basis index (or any hashable key).
"""
from fractions import Fraction
from typing import Dict, Hashable, Iterable, Mapping, Sequence, Tuple

Sparse = Dict[Hashable, Fraction]


def add_into(target: Sparse, source: Mapping, factor=1) -> Sparse:
    """target += factor * source, dropping zeros."""
    factor = Fraction(factor)
    if factor == 0:
        return target
    for key, value in source.items():
        total = target.get(key, 0) + factor * value
        if total:
            target[key] = total
        else:
            target.pop(key, None)
    return target


def scaled(source: Mapping, factor) -> Sparse:
    factor = Fraction(factor)
    if factor == 0:
        return {}
    return {k: factor * v for k, v in source.items() if v}


def combine(*terms: Tuple[Mapping, object]) -> Sparse:
    """Σ factor·vector over (vector, factor) pairs."""
    result: Sparse = {}
    for vector, factor in terms:
        add_into(result, vector, factor)
    return result


def cleaned(source: Mapping) -> Sparse:
    return {k: Fraction(v) for k, v in source.items() if v}


def to_dense(source: Mapping[int, Fraction], length: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(source.get(i, 0)) for i in range(length))


def from_dense(values: Sequence) -> Sparse:
    return {i: Fraction(v) for i, v in enumerate(values) if v}


def sorted_items(source: Mapping) -> Iterable:
    return sorted(source.items(), key=lambda kv: kv[0])


def parity_sign(n: int) -> int:
    """(−1)^n for any integer n, including negative degrees."""
    return -1 if n % 2 else 1
