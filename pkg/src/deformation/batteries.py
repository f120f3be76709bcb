"""
Seeded randomized batteries for the deformation invariants: gauge invariance of the MC
set, Chern–Simons criticality, and the Cartan splitting identity.

Each battery is cut into fixed-size shards; shard s draws from
``random.Random(f"{seed}:{s}")`` so results do not depend on the thread count.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.algebra import build_dgla, gca_builtin, lie_builtin, pairing_builtin
from src.config import Config
from src.utils.logging import logger
from src.utils.parallel import parallel_map
from .artinian import ArtinianAlgebra, artinian_builtin
from .cartan import split_cartan
from .chern_simons import CyclicStructure, cs_gradient, finite_difference_gradient, gradient_is_zero
from .elements import CONSTANT, DeformationSpace, TensorElement
from .gauge import gauge_act
from .maurer_cartan import mc_defect

SHARD_SIZE = 25
FD_EVERY = 10


@dataclass
class BatteryResult:
    name: str
    seed: int
    cases: int
    failures: List[Dict[str, Any]] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_payload(self) -> Dict[str, Any]:
        return {
            'battery': self.name,
            'seed': self.seed,
            'cases': self.cases,
            'ok': self.ok,
            'failures': self.failures,
            'stats': dict(sorted(self.stats.items())),
        }


def _small(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def _run(name: str, case: Callable[[random.Random, int], Optional[Dict[str, Any]]],
         size: Optional[int], seed: Optional[int], threads: Optional[int]) -> BatteryResult:
    size = Config.BATTERY_SIZE() if size is None else size
    seed = Config.DEFAULT_SEED() if seed is None else seed
    shards = [(s, range(s * SHARD_SIZE, min(size, (s + 1) * SHARD_SIZE)))
              for s in range((size + SHARD_SIZE - 1) // SHARD_SIZE)]

    def run_shard(shard):
        number, indices = shard
        rng = random.Random(f"{seed}:{number}")
        return [case(rng, i) for i in indices]

    outcomes = [o for chunk in parallel_map(run_shard, shards, threads) for o in chunk]
    result = BatteryResult(name, seed, size)
    for outcome in outcomes:
        if outcome.get('failure'):
            result.failures.append(outcome['failure'])
        for tag in outcome.get('tags', ()):
            result.stats[tag] = result.stats.get(tag, 0) + 1
    logger.info(f"battery {name}: {size} cases, {len(result.failures)} failures")
    return result


def _element(space: DeformationSpace, terms: Dict[tuple, Fraction]) -> TensorElement:
    """Terms keyed by (gca name, lie label, ideal name)."""
    dgla = space.dgla
    keys = {}
    for (gca_name, lie_label, ideal), value in terms.items():
        key = (dgla.index_of(gca_name, lie_label), space.coefficients.index(ideal), CONSTANT)
        keys[key] = keys.get(key, Fraction(0)) + value
    return space.element(keys)


def gauge_space() -> DeformationSpace:
    """torus_gca(2) ⊗ sl2 over (t)/(t⁴)."""
    dgla = build_dgla(gca_builtin('torus_gca', ['2']), lie_builtin('sl2'))
    return DeformationSpace(dgla, artinian_builtin('truncated', ['4']))


def random_flat_element(space: DeformationSpace, rng: random.Random) -> TensorElement:
    """
    θ₁⊗p(t)u + θ₂⊗(q(t)u + t³v): the only bracket is θ₁θ₂⊗p(t)t³[u,v], which vanishes
    because p has no constant term.
    """
    lie = space.dgla.lie.basis
    u = {x: _small(rng) for x in lie}
    v = {x: _small(rng) for x in lie}
    powers = space.coefficients.names
    terms: Dict[tuple, Fraction] = {}
    for ideal in powers:
        p, q = _small(rng), _small(rng)
        for x in lie:
            terms[('th1', x, ideal)] = terms.get(('th1', x, ideal), 0) + p * u[x]
            terms[('th2', x, ideal)] = terms.get(('th2', x, ideal), 0) + q * u[x]
    for x in lie:
        terms[('th2', x, powers[-1])] = terms.get(('th2', x, powers[-1]), 0) + v[x]
    return _element(space, terms)


def random_aligned_element(space: DeformationSpace, rng: random.Random) -> TensorElement:
    """
    θ₁⊗A(t) + θ₂⊗(c·A(t) + s·t²a₁ + t³w) with A = Σ tᵏaₖ arbitrary: [A, B] = s·t³[a₁, a₁] = 0
    mod t⁴, while the aₖ need not commute with each other.
    """
    lie = space.dgla.lie.basis
    powers = space.coefficients.names
    c, s = _small(rng), _small(rng)
    terms: Dict[tuple, Fraction] = {}
    first = {x: _small(rng) for x in lie}
    for k, ideal in enumerate(powers):
        a = first if k == 0 else {x: _small(rng) for x in lie}
        for x in lie:
            terms[('th1', x, ideal)] = a[x]
            terms[('th2', x, ideal)] = c * a[x]
    for x in lie:
        terms[('th2', x, powers[1])] += s * first[x]
        terms[('th2', x, powers[-1])] += _small(rng)
    return _element(space, terms)


def random_gauge_parameter(space: DeformationSpace, rng: random.Random) -> TensorElement:
    return _element(space, {('1', x, ideal): _small(rng)
                            for x in space.dgla.lie.basis for ideal in space.coefficients.names})


def random_mc_element(space: DeformationSpace, rng: random.Random) -> Tuple[str, TensorElement]:
    """One of three sample families: ``commuting``, ``aligned``, or ``orbit`` (a gauge image of either)."""
    shape = rng.choice(('commuting', 'aligned', 'orbit'))
    if shape == 'commuting':
        return shape, random_flat_element(space, rng)
    if shape == 'aligned':
        return shape, random_aligned_element(space, rng)
    base = random_flat_element(space, rng) if rng.random() < 0.5 else random_aligned_element(space, rng)
    return shape, gauge_act(space, random_gauge_parameter(space, rng), base)


def gauge_battery(size: Optional[int] = None, seed: Optional[int] = None,
                  threads: Optional[int] = None) -> BatteryResult:
    """MC elements stay MC under the gauge action."""
    space = gauge_space()

    def case(rng, i):
        shape, alpha = random_mc_element(space, rng)
        x = random_gauge_parameter(space, rng)
        if not mc_defect(space, alpha).is_zero():
            return {'failure': {'case': i, 'reason': 'sample is not MC', 'shape': shape, 'alpha': str(alpha)}}
        gauged = gauge_act(space, x, alpha)
        if not mc_defect(space, gauged).is_zero():
            return {'failure': {'case': i, 'reason': 'gauged element is not MC', 'shape': shape,
                                'x': str(x), 'alpha': str(alpha)}}
        return {'tags': [f"{shape}-{'moved' if gauged != alpha else 'fixed'}"]}

    return _run('gauge', case, size, seed, threads)


def cs_space() -> DeformationSpace:
    """torus_gca(3) ⊗ iso(2,1) with scalar coefficients."""
    dgla = build_dgla(gca_builtin('torus_gca', ['3']), lie_builtin('iso21'))
    return DeformationSpace(dgla, ArtinianAlgebra.scalar())


def random_connection(space: DeformationSpace, rng: random.Random) -> TensorElement:
    """
    A degree-1 scalar element drawn from one of three shapes: translations only (always
    flat), one Lie direction on every θ (always flat), or fully generic.
    """
    lie = space.dgla.lie.basis
    forms = [name for p, name in enumerate(space.dgla.gca.names) if space.dgla.gca.degrees[p] == 1]
    shape = rng.choice(('translations', 'line', 'generic'))
    if shape == 'translations':
        labels = [x for x in lie if x.startswith('P')]
        terms = {(f, x, '1'): _small(rng) for f in forms for x in labels}
    elif shape == 'line':
        direction = {x: _small(rng) for x in lie}
        terms = {}
        for f in forms:
            c = _small(rng)
            terms.update({(f, x, '1'): c * direction[x] for x in lie})
    else:
        terms = {(f, x, '1'): _small(rng) for f in forms for x in lie if rng.random() < 0.5}
    return _element(space, terms)


def cs_battery(size: Optional[int] = None, seed: Optional[int] = None,
               threads: Optional[int] = None) -> BatteryResult:
    """Critical points of Chern–Simons are exactly the MC elements."""
    space = cs_space()
    cyclic = CyclicStructure(space.dgla, pairing_builtin(space.dgla.lie))

    def case(rng, i):
        alpha = random_connection(space, rng)
        gradient = cs_gradient(cyclic, alpha)
        critical = gradient_is_zero(gradient)
        flat = mc_defect(space, alpha).is_zero()
        if critical != flat:
            return {'failure': {'case': i, 'reason': 'criticality differs from flatness', 'alpha': str(alpha)}}
        if i % FD_EVERY == 0 and finite_difference_gradient(cyclic, alpha) != gradient:
            return {'failure': {'case': i, 'reason': 'finite differences disagree', 'alpha': str(alpha)}}
        return {'tags': ['flat' if flat else 'curved']}

    return _run('cs', case, size, seed, threads)


def cartan_battery(size: Optional[int] = None, seed: Optional[int] = None,
                   threads: Optional[int] = None) -> BatteryResult:
    """mc_defect = Ω[ω] + d_ω e for random iso(2,1) connections."""
    space = cs_space()

    def case(rng, i):
        alpha = random_connection(space, rng)
        split = split_cartan(space, alpha)
        if split.omega + split.e != alpha:
            return {'failure': {'case': i, 'reason': 'ω + e differs from α', 'alpha': str(alpha)}}
        return {'tags': ['flat' if split.flat else 'curved']}

    return _run('cartan', case, size, seed, threads)


BATTERIES = {
    'gauge': gauge_battery,
    'cs': cs_battery,
    'cartan': cartan_battery,
}
