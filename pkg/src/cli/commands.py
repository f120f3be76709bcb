"""
Command handlers. Each takes the parsed arguments and the command's input resolver
and returns an ``Outcome``; the dispatch table maps (verb, subverb) to handlers.
"""
from argparse import Namespace
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

from src.algebra import FiniteGroup
from src.ce import CEComplexSpec, Direction, ce_chain_complex, ce_cochain_complex, invariant_dimension, lie_cohomology, lie_homology
from src.deformation import (BATTERIES, CyclicStructure, DeformationSpace, cs_gradient, cs_value,
                             exp_ad, finite_difference_gradient, gauge_act, gauge_path_check,
                             gradient_is_zero, mc_defect, bianchi_residual, mc_lift, mc_solve,
                             mc_tangent, split_cartan)
from src.holonomy import SurfaceRep, bundle_summary, conj_classes_of_reps, enumerate_reps
from src.simplicial import (Convention, OrdinalMap, all_maps, constant_diagram, epi_mono_factor,
                            verify_simplicial_identities)
from src.stacks import (GroupGroupoid, GroupoidFunctor, check_cover, descent_check, holim2,
                        is_weak_equivalence, obs_assignment, pi0, prefact_check)
from src.utils.errors import DeskError, INDEX_OUT_OF_RANGE, INVALID_INPUT
from src.utils.validation import InputValidator
from .inputs import InputResolver, parse_input
from .report import FAIL, OK

Rows = List[Dict[str, Any]]


@dataclass
class Outcome:
    status: str
    payload: Dict[str, Any]
    tables: Dict[str, Rows] = field(default_factory=dict)


def _verdict(holds: bool) -> str:
    return OK if holds else FAIL


def _fmt(value) -> str:
    return InputValidator.format_rational(value)


# check

def check_input(args: Namespace, resolver: InputResolver) -> Outcome:
    value = parse_input(args.path, resolver)
    payload = {'kind': type(value).__name__, 'name': getattr(value, 'name', str(args.path)), 'valid': True}
    return Outcome(OK, payload)


# ce

def _ce_spec(args: Namespace, resolver: InputResolver, direction: Direction) -> CEComplexSpec:
    lie = resolver.lie(args.lie)
    module = resolver.module(lie, args.coeffs)
    return CEComplexSpec(lie, module, direction, args.max_degree)


def ce_dims(args: Namespace, resolver: InputResolver) -> Outcome:
    direction = Direction.HOMOLOGY if args.subverb == 'homology' else Direction.COHOMOLOGY
    spec = _ce_spec(args, resolver, direction)
    dims = lie_homology(spec) if direction is Direction.HOMOLOGY else lie_cohomology(spec)
    payload = {
        'lie': spec.lie.name,
        'module': spec.coefficients.name,
        'direction': direction.value,
        'dims': [dims[n] for n in sorted(dims)],
    }
    return Outcome(OK, payload, {'dims': [{'degree': n, 'dim': d} for n, d in sorted(dims.items())]})


def ce_verify(args: Namespace, resolver: InputResolver) -> Outcome:
    """Both differentials square to zero and H⁰ is the invariant subspace."""
    spec = _ce_spec(args, resolver, Direction.COHOMOLOGY)
    cochain = ce_cochain_complex(spec).first_unclosed_degree()
    chain = ce_chain_complex(spec).first_unclosed_degree()
    h0 = lie_cohomology(spec)[0]
    invariants = invariant_dimension(spec.coefficients)
    payload = {
        'lie': spec.lie.name,
        'module': spec.coefficients.name,
        'cochain_closed': cochain is None,
        'chain_closed': chain is None,
        'h0': h0,
        'invariants': invariants,
    }
    return Outcome(_verdict(cochain is None and chain is None and h0 == invariants), payload)


# mc

def _mc_space(args: Namespace, resolver: InputResolver, simplex: int = 0) -> DeformationSpace:
    return resolver.space(args.dgla, args.artinian, simplex)


def _require(value, what: str):
    if value is None:
        raise DeskError(INVALID_INPUT, f"this command needs {what}")
    return value


def _space_payload(space: DeformationSpace) -> Dict[str, Any]:
    return {'dgla': space.dgla.name, 'artinian': space.coefficients.name}


def mc_defect_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    space = _mc_space(args, resolver)
    alpha = resolver.element(space, _require(args.element, '--element')).require_degree(1, 'alpha')
    defect = mc_defect(space, alpha)
    payload = {**_space_payload(space), 'element': alpha.to_payload(), 'defect': defect.to_payload(),
               'is_mc': defect.is_zero()}
    return Outcome(_verdict(defect.is_zero()), payload)


def mc_tangent_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    dgla = resolver.dgla(args.dgla)
    tangent = mc_tangent(dgla)
    return Outcome(OK, {'dgla': dgla.name, **tangent.to_payload(dgla)})


def mc_lift_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    space = _mc_space(args, resolver)
    alpha = resolver.element(space, _require(args.element, '--element')).require_degree(1, 'alpha')
    result = mc_lift(space, alpha, args.order)
    return Outcome(_verdict(result.lifted), {**_space_payload(space), **result.to_payload()})


def mc_solve_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    space = _mc_space(args, resolver)
    alpha = resolver.element(space, _require(args.element, '--element')).require_degree(1, 'alpha')
    steps = mc_solve(space, alpha)
    solved = all(step.lifted for step in steps)
    final = steps[-1].element if steps else alpha
    payload = {**_space_payload(space), 'steps': [s.to_payload() for s in steps],
               'solved': solved, 'element': final.to_payload()}
    return Outcome(_verdict(solved), payload)


def mc_bianchi_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    space = _mc_space(args, resolver)
    alpha = resolver.element(space, _require(args.element, '--element'))
    residual = bianchi_residual(space, alpha)
    return Outcome(_verdict(residual.is_zero()), {**_space_payload(space), 'residual': residual.to_payload()})


def mc_gauge_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    """Apply the gauge action and confirm the defect transforms by e^{ad x}."""
    space = _mc_space(args, resolver)
    alpha = resolver.element(space, _require(args.element, '--element')).require_degree(1, 'alpha')
    x = resolver.element(space, _require(args.x, '--x')).require_degree(0, 'x')
    gauged = gauge_act(space, x, alpha)
    before = mc_defect(space, alpha)
    after = mc_defect(space, gauged)
    covariant = after == exp_ad(space, x, before)
    payload = {**_space_payload(space), 'gauged': gauged.to_payload(), 'defect_before': before.to_payload(),
               'defect_after': after.to_payload(), 'covariant': covariant}
    return Outcome(_verdict(covariant), payload)


def mc_path_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    space = _mc_space(args, resolver, simplex=1)
    path = resolver.path(space, _require(args.path, '--path'))
    verdict = gauge_path_check(path, args.max_degree)
    return Outcome(_verdict(verdict['holds']), {**_space_payload(space), **verdict})


def _battery(name: str) -> Callable[[Namespace, InputResolver], Outcome]:
    def run(args: Namespace, resolver: InputResolver) -> Outcome:
        result = BATTERIES[name](args.battery, args.seed, args.threads)
        tables = {'stats': [{'tag': k, 'count': v} for k, v in sorted(result.stats.items())]}
        return Outcome(_verdict(result.ok), result.to_payload(), tables)
    return run


# cs and cartan

def _scalar_connection(args: Namespace, resolver: InputResolver):
    space = resolver.space(args.dgla, 'scalar')
    alpha = resolver.element(space, _require(args.element, '--element')).require_degree(1, 'alpha')
    return space, alpha


def cs_value_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    space, alpha = _scalar_connection(args, resolver)
    cyclic = CyclicStructure(space.dgla, resolver.pairing(space.dgla.lie, args.pairing))
    return Outcome(OK, {'dgla': space.dgla.name, 'pairing': cyclic.pairing.name,
                        'value': _fmt(cs_value(cyclic, alpha))})


def cs_gradient_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    """Exact gradient, the interpolated finite differences, and criticality against flatness."""
    space, alpha = _scalar_connection(args, resolver)
    cyclic = CyclicStructure(space.dgla, resolver.pairing(space.dgla.lie, args.pairing))
    gradient = cs_gradient(cyclic, alpha)
    agree = finite_difference_gradient(cyclic, alpha) == gradient
    critical = gradient_is_zero(gradient)
    flat = mc_defect(space, alpha).is_zero()
    rows = [{'coordinate': space.dgla.label(k), 'partial': _fmt(v)} for k, v in sorted(gradient.items()) if v]
    payload = {'dgla': space.dgla.name, 'pairing': cyclic.pairing.name,
               'gradient': {r['coordinate']: r['partial'] for r in rows},
               'critical': critical, 'flat': flat, 'finite_differences_agree': agree}
    return Outcome(_verdict(agree and critical == flat), payload, {'gradient': rows})


def cartan_split_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    space, alpha = _scalar_connection(args, resolver)
    split = split_cartan(space, alpha)
    return Outcome(_verdict(split.consistent), {'dgla': space.dgla.name, **split.to_payload()})


# simplicial

def simplicial_verify(args: Namespace, resolver: InputResolver) -> Outcome:
    report = verify_simplicial_identities(args.max_n, args.convention, args.threads)
    tables = {'families': [{'family': k, 'instances': v} for k, v in sorted(report.per_family.items())]}
    return Outcome(_verdict(report.ok), report.to_payload(), tables)


def simplicial_factor(args: Namespace, resolver: InputResolver) -> Outcome:
    values = InputValidator.parse_index_tuple(_require(args.map, '--map'))
    if not values:
        raise DeskError(INVALID_INPUT, "an ordinal map needs at least one value")
    target = args.target if args.target is not None else max(values)
    f = OrdinalMap(len(values) - 1, target, values)
    factorization = epi_mono_factor(f, args.convention)
    round_trip = factorization.composite() == f
    payload = {'map': list(f.values), 'source': f.source, 'target': f.target,
               **factorization.to_payload(), 'round_trip': round_trip}
    return Outcome(_verdict(round_trip), payload)


def simplicial_roundtrip(args: Namespace, resolver: InputResolver) -> Outcome:
    """Epi–mono factor every ordinal map [n] → [m] with n, m ≤ max-n and recompose."""
    convention = Convention.resolve(args.convention)
    checked, unfactorable, failures = 0, 0, []
    for n in range(args.max_n + 1):
        for m in range(args.max_n + 1):
            for f in all_maps(n, m):
                try:
                    factorization = epi_mono_factor(f, convention)
                except DeskError as e:
                    if e.code != INDEX_OUT_OF_RANGE:
                        raise
                    unfactorable += 1
                    continue
                checked += 1
                if factorization.composite() != f:
                    failures.append({'source': n, 'target': m, 'map': list(f.values)})
    payload = {'convention': convention.value, 'max_n': args.max_n, 'checked': checked,
               'unfactorable': unfactorable, 'failures': failures}
    return Outcome(_verdict(not failures), payload)


# stacks

def stack_check(args: Namespace, resolver: InputResolver) -> Outcome:
    site = resolver.site(args.site)
    prestack = resolver.prestack(site, args.prestack)
    report = descent_check(site, prestack, args.threads)
    rows = [{'object': c.object, 'family': ','.join(c.family), 'pi0_value': c.pi0_value,
             'pi0_holim': c.pi0_holim, 'holds': c.holds} for c in report.covers]
    return Outcome(_verdict(report.ok), report.to_payload(), {'covers': rows})


def holim_cech(args: Namespace, resolver: InputResolver) -> Outcome:
    site = resolver.site(args.site)
    prestack = resolver.prestack(site, args.prestack)
    u = _require(args.object, '--object')
    if args.cover:
        family = tuple(part.strip() for part in args.cover.split(','))
    else:
        families = site.families(u)
        if not families:
            raise DeskError(INVALID_INPUT, f"{u} has no covering family in {site.name}")
        family = families[0]
    verdict = check_cover(site, prestack, u, family)
    payload = {'site': site.name, 'prestack': prestack.name, **verdict.to_payload()}
    return Outcome(OK, payload)


def holim_constant(args: Namespace, resolver: InputResolver) -> Outcome:
    """holim of the constant diagram at BG against BG itself."""
    value = GroupGroupoid(resolver.group(_require(args.group, '--group')))
    holim = holim2(constant_diagram(value))
    functor = GroupoidFunctor(value, holim, lambda a: (a, value.identity(a)),
                              lambda m: ((value.source(m), value.identity(value.source(m))),
                                         (value.target(m), value.identity(value.target(m))), m),
                              name='const')
    verdict = is_weak_equivalence(functor)
    payload = {'groupoid': value.name, 'holim_objects': len(holim.objects()),
               'pi0_holim': pi0(holim).count, 'comparison': verdict.to_payload()}
    return Outcome(_verdict(verdict.holds), payload)


def prefact_check_cmd(args: Namespace, resolver: InputResolver) -> Outcome:
    data = resolver.prefact(_require(args.data, '--data'))
    report = prefact_check(data)
    return Outcome(_verdict(report.ok), report.to_payload(), {'failures': report.failures} if report.failures else {})


def obs_build(args: Namespace, resolver: InputResolver) -> Outcome:
    model = resolver.obs_model(_require(args.model, '--model'))
    data = obs_assignment(model, args.degree)
    report = prefact_check(data)
    dims = {u: data.complexes[u].spaces.dim(0) for u in data.opens}
    payload = {'model': model.name, 'degree_bound': args.degree, 'dims': dims,
               'structure_maps': len(data.maps), 'prefact': report.to_payload()}
    rows = [{'open': u, 'patches': ','.join(model.opens[u]), 'dim': d} for u, d in dims.items()]
    return Outcome(_verdict(report.ok), payload, {'observables': rows})


# holonomy

def _holonomy_group(args: Namespace, resolver: InputResolver) -> FiniteGroup:
    return resolver.group(_require(args.group, '--group'))


def holonomy_count(args: Namespace, resolver: InputResolver) -> Outcome:
    group = _holonomy_group(args, resolver)
    enumeration = enumerate_reps(args.genus, group, args.threads, args.budget)
    return Outcome(OK, enumeration.to_payload(listing=args.list))


def holonomy_classes(args: Namespace, resolver: InputResolver) -> Outcome:
    group = _holonomy_group(args, resolver)
    classes = conj_classes_of_reps(args.genus, group, args.threads, args.budget)
    rows = [{'representative': ','.join(r.labels(group)), 'size': s}
            for r, s in zip(classes.representatives, classes.sizes)]
    return Outcome(OK, classes.to_payload(), {'classes': rows})


def holonomy_bundle(args: Namespace, resolver: InputResolver) -> Outcome:
    group = _holonomy_group(args, resolver)
    rep = SurfaceRep.parse([t.strip() for t in _require(args.rep, '--rep').split(',')], group)
    return Outcome(OK, bundle_summary(rep, group))


Handler = Callable[[Namespace, InputResolver], Outcome]

DISPATCH: Dict[Tuple[str, str], Handler] = {
    ('check', 'input'): check_input,
    ('ce', 'cohomology'): ce_dims,
    ('ce', 'homology'): ce_dims,
    ('ce', 'verify'): ce_verify,
    ('mc', 'defect'): mc_defect_cmd,
    ('mc', 'tangent'): mc_tangent_cmd,
    ('mc', 'lift'): mc_lift_cmd,
    ('mc', 'solve'): mc_solve_cmd,
    ('mc', 'bianchi'): mc_bianchi_cmd,
    ('mc', 'gauge'): mc_gauge_cmd,
    ('mc', 'path'): mc_path_cmd,
    ('mc', 'battery'): _battery('gauge'),
    ('cs', 'value'): cs_value_cmd,
    ('cs', 'gradient'): cs_gradient_cmd,
    ('cs', 'battery'): _battery('cs'),
    ('cartan', 'split'): cartan_split_cmd,
    ('cartan', 'battery'): _battery('cartan'),
    ('simplicial', 'verify'): simplicial_verify,
    ('simplicial', 'factor'): simplicial_factor,
    ('simplicial', 'roundtrip'): simplicial_roundtrip,
    ('stack', 'check'): stack_check,
    ('holim', 'cech'): holim_cech,
    ('holim', 'constant'): holim_constant,
    ('prefact', 'check'): prefact_check_cmd,
    ('obs', 'build'): obs_build,
    ('holonomy', 'count'): holonomy_count,
    ('holonomy', 'classes'): holonomy_classes,
    ('holonomy', 'bundle'): holonomy_bundle,
}
