"""
Exhaustive check of the five families of cosimplicial relations.

Arities, with d_i^n : [n−1] → [n] and s_j^n : [n+1] → [n]:

  (1) d_j^{n+1} ∘ d_i^n     = d_i^{n+1} ∘ d_{j−1}^n      0 ≤ i < j ≤ n+1
  (2) s_j^{n−1} ∘ d_i^n     = d_i^{n−1} ∘ s_{j−1}^{n−2}  0 ≤ i < j ≤ n−1, n ≥ 2
  (3) s_j^{n−1} ∘ d_j^n     = s_j^{n−1} ∘ d_{j+1}^n = id_[n−1]   0 ≤ j ≤ n−1
  (4) s_j^{n−1} ∘ d_i^n     = d_{i−1}^{n−1} ∘ s_j^{n−2}  j+1 < i ≤ n
  (5) s_j^{n−1} ∘ s_i^n     = s_i^{n−1} ∘ s_{j+1}^n      0 ≤ i ≤ j ≤ n−1

Family (2) is read with the superscripts as written: both sides are maps
[n−1] → [n−1], which is the only reading under which the composites are defined.
Every map involved has superscript at most max_n.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.utils.logging import logger
from src.utils.parallel import parallel_map
from .ordinals import Convention, OrdinalMap, codegeneracy, coface, compose, identity

FAMILY_READING = {
    1: "d_j^{n+1} d_i^n = d_i^{n+1} d_{j-1}^n, 0 <= i < j <= n+1",
    2: "s_j^{n-1} d_i^n = d_i^{n-1} s_{j-1}^{n-2}, 0 <= i < j <= n-1, superscripts as written",
    3: "s_j^{n-1} d_j^n = s_j^{n-1} d_{j+1}^n = id_[n-1], 0 <= j <= n-1",
    4: "s_j^{n-1} d_i^n = d_{i-1}^{n-1} s_j^{n-2}, j+1 < i <= n",
    5: "s_j^{n-1} s_i^n = s_i^{n-1} s_{j+1}^n, 0 <= i <= j <= n-1",
}

Instance = Tuple[Dict[str, int], OrdinalMap, OrdinalMap]


@dataclass
class IdentityReport:
    max_n: int
    convention: str
    checked: int = 0
    per_family: Dict[int, int] = field(default_factory=dict)
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_payload(self) -> Dict[str, Any]:
        return {
            'header': {'convention': self.convention,
                       'families': {str(k): v for k, v in FAMILY_READING.items()}},
            'max_n': self.max_n,
            'checked': self.checked,
            'per_family': {str(k): v for k, v in sorted(self.per_family.items())},
            'ok': self.ok,
            'failures': self.failures,
        }


def _family_1(max_n: int, c: Convention) -> List[Instance]:
    out = []
    for n in range(1, max_n):
        for j in range(1, n + 2):
            for i in range(j):
                out.append(({'n': n, 'i': i, 'j': j},
                            compose(coface(n + 1, j, c), coface(n, i, c)),
                            compose(coface(n + 1, i, c), coface(n, j - 1, c))))
    return out


def _family_2(max_n: int, c: Convention) -> List[Instance]:
    out = []
    for n in range(2, max_n + 1):
        for j in range(1, n):
            for i in range(j):
                out.append(({'n': n, 'i': i, 'j': j},
                            compose(codegeneracy(n - 1, j), coface(n, i, c)),
                            compose(coface(n - 1, i, c), codegeneracy(n - 2, j - 1))))
    return out


def _family_3(max_n: int, c: Convention) -> List[Instance]:
    out = []
    for n in range(1, max_n + 1):
        for j in range(n):
            s = codegeneracy(n - 1, j)
            target = identity(n - 1)
            for k in (j, j + 1):
                out.append(({'n': n, 'j': j, 'identity_on': n - 1, 'face': k},
                            compose(s, coface(n, k, c)), target))
    return out


def _family_4(max_n: int, c: Convention) -> List[Instance]:
    out = []
    for n in range(2, max_n + 1):
        for i in range(2, n + 1):
            for j in range(i - 1):
                out.append(({'n': n, 'i': i, 'j': j},
                            compose(codegeneracy(n - 1, j), coface(n, i, c)),
                            compose(coface(n - 1, i - 1, c), codegeneracy(n - 2, j))))
    return out


def _family_5(max_n: int, c: Convention) -> List[Instance]:
    out = []
    for n in range(1, max_n + 1):
        for j in range(n):
            for i in range(j + 1):
                out.append(({'n': n, 'i': i, 'j': j},
                            compose(codegeneracy(n - 1, j), codegeneracy(n, i)),
                            compose(codegeneracy(n - 1, i), codegeneracy(n, j + 1))))
    return out


FAMILIES: Dict[int, Callable[[int, Convention], List[Instance]]] = {
    1: _family_1, 2: _family_2, 3: _family_3, 4: _family_4, 5: _family_5,
}


def family_instances(family: int, max_n: int, convention: Optional[Convention] = None) -> List[Instance]:
    return FAMILIES[family](max_n, Convention.resolve(convention))


def verify_simplicial_identities(max_n: int, convention: Optional[Convention] = None,
                                 threads: Optional[int] = None) -> IdentityReport:
    """
    Evaluate both sides of every instance pointwise.

    Returns:
        IdentityReport: instance counts per family and every failing instance
    """
    convention = Convention.resolve(convention)
    max_n = max(1, int(max_n))

    def run(family):
        failures = []
        instances = FAMILIES[family](max_n, convention)
        for where, left, right in instances:
            if left != right:
                failures.append({'family': family, **where,
                                 'left': list(left.values), 'right': list(right.values)})
        return family, len(instances), failures

    report = IdentityReport(max_n, convention.value)
    for family, count, failures in parallel_map(run, sorted(FAMILIES), threads):
        report.per_family[family] = count
        report.checked += count
        report.failures.extend(failures)
    if report.failures:
        logger.warning(f"{len(report.failures)} simplicial identity failures under {convention.value}")
    return report
