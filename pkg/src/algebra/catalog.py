"""
Built-in Lie algebras, GCAs, modules and pairings, addressable as
``builtin:<name>(<params>)``.
"""
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Sequence, Tuple, Union

from src.foundation import Matrix
from src.utils.cache import cache_manager
from src.utils.errors import DeskError, UNKNOWN_BUILTIN, INVALID_INPUT
from src.utils.validation import InputValidator
from .dgla import DGLA, build_dgla
from .gca import GCA
from .lie import LieAlgebra, LieModule
from .pairing import InvariantPairing

LIE_BUILTINS = ('sl2', 'abelian', 'heisenberg3', 'iso21', 'gravity')
GCA_BUILTINS = ('torus_gca', 'surface_gca', 'interval_forms')


def levi_civita(a: int, b: int, c: int) -> int:
    """ε_abc on indices 0..2 with ε_012 = +1."""
    if len({a, b, c}) < 3:
        return 0
    return 1 if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


def _int_param(name: str, params: Sequence[str], minimum: int = 0) -> int:
    if len(params) != 1:
        raise DeskError(UNKNOWN_BUILTIN, f"{name} takes exactly one integer parameter")
    try:
        value = int(params[0])
    except ValueError:
        raise DeskError(UNKNOWN_BUILTIN, f"{name} parameter {params[0]!r} is not an integer")
    if value < minimum:
        raise DeskError(INVALID_INPUT, f"{name} parameter must be at least {minimum}")
    return value


# Lie algebras

def sl2() -> LieAlgebra:
    return LieAlgebra(['E', 'F', 'H'], {
        (0, 1): {2: 1},
        (2, 0): {0: 2},
        (2, 1): {1: -2},
    }, name='sl2')


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra([f"x{i + 1}" for i in range(n)], {}, name=f"abelian({n})")


def heisenberg3() -> LieAlgebra:
    return LieAlgebra(['X', 'Y', 'Z'], {(0, 1): {2: 1}}, name='heisenberg3')


def gravity(cosmological: Fraction) -> LieAlgebra:
    """
    [J_a,J_b] = ε_abc J_c, [J_a,P_b] = ε_abc P_c, [P_a,P_b] = λ ε_abc J_c with the
    pairing ⟨J_a,P_b⟩ = δ_ab. λ = 0 is iso(2,1).
    """
    cosmological = Fraction(cosmological)
    brackets = {}
    for a, b in combinations(range(3), 2):
        c = 3 - a - b
        eps = levi_civita(a, b, c)
        brackets[(a, b)] = {c: eps}
        if cosmological:
            brackets[(3 + a, 3 + b)] = {c: eps * cosmological}
    for a in range(3):
        for b in range(3):
            if a != b:
                c = 3 - a - b
                brackets[(a, 3 + b)] = {3 + c: levi_civita(a, b, c)}
    name = 'iso21' if cosmological == 0 else f"gravity({InputValidator.format_rational(cosmological)})"
    lie = LieAlgebra(['J1', 'J2', 'J3', 'P1', 'P2', 'P3'], brackets, name=name,
                     splitting=((0, 1, 2), (3, 4, 5)))
    gram = [[1 if abs(i - j) == 3 else 0 for j in range(6)] for i in range(6)]
    lie.pairing = InvariantPairing(lie, Matrix(6, 6, gram), name=f"{name}.pairing")
    return lie


def iso21() -> LieAlgebra:
    return gravity(Fraction(0))


def lie_builtin(name: str, params: Sequence[str] = ()) -> LieAlgebra:
    key = f"{name}({','.join(params)})"
    return cache_manager.get_or_create('builtin.lie', key, lambda: _make_lie(name, params))


def _make_lie(name: str, params: Sequence[str]) -> LieAlgebra:
    if name == 'sl2' and not params:
        return sl2()
    if name == 'abelian':
        return abelian(_int_param(name, params))
    if name == 'heisenberg3' and not params:
        return heisenberg3()
    if name == 'iso21' and not params:
        return iso21()
    if name == 'gravity':
        if len(params) != 1:
            raise DeskError(UNKNOWN_BUILTIN, "gravity takes one rational parameter")
        return gravity(InputValidator.parse_rational(params[0]))
    raise DeskError(UNKNOWN_BUILTIN, f"unknown Lie algebra builtin {name!r}",
                    {'known': list(LIE_BUILTINS)})


# Graded-commutative algebras

def _merge_sign(left: Tuple[int, ...], right: Tuple[int, ...]) -> int:
    inversions = sum(1 for a in left for b in right if a > b)
    return -1 if inversions % 2 else 1


def torus_gca(n: int) -> GCA:
    """Exterior algebra on θ1..θn with ∫θ1⋯θn = 1."""
    subsets: List[Tuple[int, ...]] = [s for k in range(n + 1) for s in combinations(range(1, n + 1), k)]
    names = ['1' if not s else ''.join(f"th{i}" for i in s) for s in subsets]
    position = {s: i for i, s in enumerate(subsets)}
    products = {}
    for i, left in enumerate(subsets):
        for j, right in enumerate(subsets):
            if left and right and not set(left) & set(right):
                merged = tuple(sorted(left + right))
                products[(i, j)] = {position[merged]: _merge_sign(left, right)}
    return GCA(names, [len(s) for s in subsets], products,
               integration={len(subsets) - 1: 1}, name=f"torus_gca({n})")


def surface_gca(g: int) -> GCA:
    """Cohomology of a genus-g surface: a_i b_j = δ_ij ω, b_i a_j = −δ_ij ω, ∫ω = 1."""
    names = ['1'] + [f"a{i + 1}" for i in range(g)] + [f"b{i + 1}" for i in range(g)] + ['w']
    degrees = [0] + [1] * (2 * g) + [2]
    top = 2 * g + 1
    products = {}
    for i in range(g):
        products[(1 + i, 1 + g + i)] = {top: 1}
        products[(1 + g + i, 1 + i)] = {top: -1}
    return GCA(names, degrees, products, integration={top: 1}, name=f"surface_gca({g})")


def interval_forms(bound: int) -> GCA:
    """
    Polynomial forms on [0,1] truncated by weight (t and dt both weight 1) at bound+1:
    0-forms 1..t^(D+1), 1-forms dt..t^D dt, d(t^k) = k t^(k−1) dt and ∫ t^k dt = 1/(k+1).
    """
    zero = [('1' if k == 0 else ('t' if k == 1 else f"t{k}")) for k in range(bound + 2)]
    one = [('dt' if k == 0 else ('tdt' if k == 1 else f"t{k}dt")) for k in range(bound + 1)]
    names = zero + one
    degrees = [0] * len(zero) + [1] * len(one)
    offset = len(zero)
    products = {}
    for a in range(1, bound + 2):
        for b in range(1, bound + 2):
            if a + b <= bound + 1:
                products[(a, b)] = {a + b: 1}
        for b in range(bound + 1):
            if a + b <= bound:
                products[(a, offset + b)] = {offset + a + b: 1}
                products[(offset + b, a)] = {offset + a + b: 1}
    differential = {k: {offset + k - 1: k} for k in range(1, bound + 2)}
    integration = {offset + k: Fraction(1, k + 1) for k in range(bound + 1)}
    return GCA(names, degrees, products, differential, integration, name=f"interval_forms({bound})")


def gca_builtin(name: str, params: Sequence[str] = ()) -> GCA:
    key = f"{name}({','.join(params)})"
    return cache_manager.get_or_create('builtin.gca', key, lambda: _make_gca(name, params))


def _make_gca(name: str, params: Sequence[str]) -> GCA:
    if name == 'torus_gca':
        return torus_gca(_int_param(name, params))
    if name == 'surface_gca':
        return surface_gca(_int_param(name, params))
    if name == 'interval_forms':
        return interval_forms(_int_param(name, params))
    raise DeskError(UNKNOWN_BUILTIN, f"unknown GCA builtin {name!r}", {'known': list(GCA_BUILTINS)})


def builtin(name: str, params: Sequence[str] = ()) -> Union[LieAlgebra, GCA]:
    """Dispatch over both catalogs by name."""
    if name in LIE_BUILTINS:
        return lie_builtin(name, params)
    if name in GCA_BUILTINS:
        return gca_builtin(name, params)
    raise DeskError(UNKNOWN_BUILTIN, f"unknown builtin {name!r}",
                    {'known': list(LIE_BUILTINS + GCA_BUILTINS)})


def resolve_builtin(reference: str) -> Union[LieAlgebra, GCA]:
    name, params = InputValidator.parse_builtin(reference)
    return builtin(name, params)


# Modules and pairings

def sl2_standard(lie: LieAlgebra) -> LieModule:
    if lie.basis != ('E', 'F', 'H'):
        raise DeskError(INVALID_INPUT, "the standard module is defined for sl2 only")
    action = [
        Matrix(2, 2, [[0, 1], [0, 0]]),
        Matrix(2, 2, [[0, 0], [1, 0]]),
        Matrix(2, 2, [[1, 0], [0, -1]]),
    ]
    return LieModule(lie, 2, action, name='standard', basis=('v1', 'v2'))


MODULE_BUILTINS: Dict[str, Callable[[LieAlgebra], LieModule]] = {
    'trivial': LieModule.trivial,
    'adjoint': LieModule.adjoint,
    'coadjoint': LieModule.coadjoint,
    'standard': sl2_standard,
}


def module_builtin(lie: LieAlgebra, name: str) -> LieModule:
    if name not in MODULE_BUILTINS:
        raise DeskError(UNKNOWN_BUILTIN, f"unknown module builtin {name!r}", {'known': sorted(MODULE_BUILTINS)})
    return MODULE_BUILTINS[name](lie)


def trace_form(lie: LieAlgebra) -> InvariantPairing:
    """Trace form of the defining representation of sl2."""
    rho = sl2_standard(lie).action
    data = [[sum(((rho[i] @ rho[j]).entry(k, k) for k in range(2)), Fraction(0)) for j in range(3)]
            for i in range(3)]
    return InvariantPairing(lie, Matrix(3, 3, data), name='trace')


def pairing_builtin(lie: LieAlgebra, name: str = 'default') -> InvariantPairing:
    if name == 'default':
        if lie.pairing is None:
            raise DeskError(INVALID_INPUT, f"{lie.name} carries no default pairing")
        return lie.pairing
    if name == 'killing':
        return InvariantPairing.killing(lie)
    if name == 'trace':
        return trace_form(lie)
    raise DeskError(UNKNOWN_BUILTIN, f"unknown pairing builtin {name!r}")


def resolve_dgla(reference: str) -> DGLA:
    """``torus_gca(2)*sl2`` (either factor order) → the tensor DGLA."""
    parts = InputValidator.split_product(reference.replace('builtin:', ''))
    if len(parts) != 2:
        raise DeskError(INVALID_INPUT, f"a DGLA reference names a GCA and a Lie algebra: {reference!r}")
    first, second = (resolve_builtin(p) for p in parts)
    if isinstance(first, LieAlgebra):
        first, second = second, first
    if not isinstance(first, GCA) or not isinstance(second, LieAlgebra):
        raise DeskError(INVALID_INPUT, f"a DGLA reference names a GCA and a Lie algebra: {reference!r}")
    return build_dgla(first, second)
