"""
Tests for finite groupoids, sites, prestacks, Čech diagrams, the level-2 homotopy limit
and descent.
"""
import json
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from src.algebra import group_builtin
from src.simplicial import constant_diagram
from src.stacks import (ActionGroupoid, DiscreteGroupoid, ExplicitGroupoid, GroupGroupoid,
                        GroupoidFunctor, Prestack, ProductGroupoid, Site, cech_diagram,
                        check_cover, constant_bg, descent_check, functions, holim2,
                        is_weak_equivalence, pi0, prestack_builtin, representable,
                        site_builtin, validate_functor, validate_groupoid, validate_prestack,
                        validate_site)
from src.utils.errors import (DeskError, ValidationError, INVALID_DIAGRAM, MISSING_PULLBACK,
                              UNKNOWN_BUILTIN)

pytestmark = pytest.mark.unit

Z2_TABLE = {"e,e": "e", "e,s": "s", "s,e": "s", "s,s": "e"}


def load(data_dir, name):
    return json.loads((data_dir / name).read_text())


@pytest.fixture
def file_site(data_dir):
    return Site.from_dict(load(data_dir, 'circle_site.json'))


def two_arcs_without_overlap():
    """A cover of X by A and B whose pullback was never recorded."""
    arrows = {('A', 'A'): 'id_A', ('B', 'B'): 'id_B', ('X', 'X'): 'id_X',
              ('A', 'X'): 'A<X', ('B', 'X'): 'B<X'}
    covers = {'A': [('A',)], 'B': [('B',)], 'X': [('X',), ('A', 'B')]}
    return Site(['A', 'B', 'X'], arrows, covers, name='no-overlap')


@st.composite
def small_topologies(draw):
    """Up to three points with up to three generating opens, none of them the whole space."""
    points = list(range(draw(st.integers(1, 3))))
    subsets = draw(st.lists(st.sets(st.sampled_from(points), min_size=1), max_size=3))
    return points, {f"O{i}": sorted(s) for i, s in enumerate(subsets) if len(s) < len(points)}


def covered_site(points, opens):
    """The site of ``opens`` with the whole space covered by all its proper opens, when they reach every point."""
    bare = Site.from_opens(points, opens)
    top = next(u for u in bare.objects if bare.points[u] == frozenset(points))
    proper = [u for u in bare.objects if u != top]
    reach = frozenset().union(*(bare.points[u] for u in proper))
    covers = {top: [proper]} if reach == frozenset(points) else None
    return Site.from_opens(points, opens, covers, name='small')


class TestGroupoids:
    def test_explicit_groupoid_from_table(self):
        g = ExplicitGroupoid.from_dict({'objects': ['*'],
                                        'morphisms': [{'id': 'e', 'src': '*', 'dst': '*'},
                                                      {'id': 's', 'src': '*', 'dst': '*'}],
                                        'composition': Z2_TABLE})
        assert g.identity('*') == 'e'
        assert g.inverse('s') == 's'
        assert validate_groupoid(g).ok

    def test_missing_identity_is_reported(self):
        g = ExplicitGroupoid(['a'], {'f': ('a', 'a')}, {})
        assert [issue['kind'] for issue in validate_groupoid(g).issues] == ['identity']

    def test_non_invertible_arrow(self):
        g = ExplicitGroupoid(['a', 'b'], {'ia': ('a', 'a'), 'ib': ('b', 'b'), 'f': ('a', 'b')},
                             {('ia', 'ia'): 'ia', ('ib', 'ib'): 'ib', ('f', 'ia'): 'f', ('ib', 'f'): 'f'})
        kinds = {issue['kind'] for issue in validate_groupoid(g).issues}
        assert 'inverse' in kinds

    @pytest.mark.parametrize('name', ['Z2', 'S3', 'Q8'])
    def test_group_groupoids_validate(self, name):
        assert validate_groupoid(GroupGroupoid(group_builtin(name))).ok

    def test_action_groupoid_components_are_cosets(self):
        s3 = group_builtin('S3')
        acting = s3.subgroup([s3.element('(12)')])
        action = ActionGroupoid(s3, acting)
        assert validate_groupoid(action).ok
        assert pi0(action).count == 3

    def test_product_of_nothing_is_a_point(self):
        point = ProductGroupoid([])
        assert point.objects() == ((),)
        assert pi0(point).count == 1

    def test_identity_is_a_weak_equivalence(self):
        bz2 = GroupGroupoid(group_builtin('Z2'))
        verdict = is_weak_equivalence(GroupoidFunctor.identity(bz2))
        assert verdict.holds
        assert verdict.witness is None

    def test_point_into_bz2_is_not_full(self):
        bz2 = GroupGroupoid(group_builtin('Z2'))
        point = ProductGroupoid([])
        inclusion = GroupoidFunctor(point, bz2, lambda a: '*', lambda m: 0)
        verdict = is_weak_equivalence(inclusion)
        assert verdict.essentially_surjective
        assert not verdict.fully_faithful
        assert verdict.witness['kind'] == 'not_full'

    def test_bz2_onto_point_is_not_faithful(self):
        bz2 = GroupGroupoid(group_builtin('Z2'))
        point = ProductGroupoid([])
        collapse = GroupoidFunctor(bz2, point, lambda a: (), lambda m: ())
        assert validate_functor(collapse).ok
        assert is_weak_equivalence(collapse).witness['kind'] == 'not_faithful'

    def test_unreachable_component(self):
        one = DiscreteGroupoid(['a'])
        two = DiscreteGroupoid(['a', 'b'])
        inclusion = GroupoidFunctor(one, two, lambda a: a, lambda m: m)
        verdict = is_weak_equivalence(inclusion)
        assert verdict.fully_faithful and not verdict.essentially_surjective
        assert verdict.witness == {'kind': 'unreachable', 'object': 'b'}

    def test_functor_breaking_composition(self):
        z4 = GroupGroupoid(group_builtin('Z4'))
        doubled = GroupoidFunctor(z4, z4, lambda a: a, lambda m: 1 if m else 0)
        kinds = {issue['kind'] for issue in validate_functor(doubled).issues}
        assert kinds == {'composition'}


class TestSites:
    @pytest.mark.parametrize('name', ['circle2', 'discrete2', 'trivial'])
    def test_builtin_sites_validate(self, name):
        assert validate_site(site_builtin(name)).ok

    def test_circle_pullback_has_two_pieces(self):
        site = site_builtin('circle2')
        assert site.pullback('U1', 'U2') == ('V1', 'V2')
        assert site.pullback('V1', 'U1') == ('V1',)

    def test_file_site_validates(self, file_site):
        assert validate_site(file_site).ok
        assert file_site.families('S') == [('S',), ('U1', 'U2')]

    def test_missing_pullback_is_reported(self):
        site = two_arcs_without_overlap()
        with pytest.raises(DeskError) as info:
            site.pullback('A', 'B')
        assert info.value.code == MISSING_PULLBACK
        kinds = {issue['kind'] for issue in validate_site(site).issues}
        assert 'missing_pullback' in kinds

    def test_missing_identity_cover(self):
        site = Site(['X'], {('X', 'X'): 'id_X'}, {})
        assert [issue['kind'] for issue in validate_site(site).issues] == ['identity_cover']

    def test_site_must_be_thin(self):
        data = {'objects': ['A', 'B'],
                'morphisms': [{'id': 'f', 'src': 'A', 'dst': 'B'}, {'id': 'g', 'src': 'A', 'dst': 'B'}]}
        with pytest.raises(DeskError):
            Site.from_dict(data)

    def test_unknown_site(self):
        with pytest.raises(DeskError) as info:
            site_builtin('torus')
        assert info.value.code == UNKNOWN_BUILTIN


class TestPrestacks:
    @pytest.mark.parametrize('reference', ['constantBG:Z2', 'functions:2', 'representable:U1'])
    def test_builtin_prestacks_validate(self, reference):
        site = site_builtin('circle2')
        assert validate_prestack(prestack_builtin(site, reference)).ok

    def test_file_prestack_validates(self, file_site, data_dir):
        prestack = Prestack.from_dict(file_site, load(data_dir, 'constant_bz2.json'))
        assert validate_prestack(prestack).ok

    def test_functions_count_maps(self):
        site = site_builtin('discrete2')
        prestack = functions(site, 3)
        assert len(prestack.at('X').objects()) == 9
        assert len(prestack.at('P1').objects()) == 3

    def test_representable_is_empty_off_its_object(self):
        site = site_builtin('circle2')
        prestack = representable(site, 'U1')
        assert prestack.at('S').objects() == ()
        assert len(prestack.at('V1').objects()) == 1

    def test_broken_strictness(self):
        site = site_builtin('circle2')
        good = constant_bg(site, 'Z2')
        bz2 = good.at('S')
        trivialise = GroupoidFunctor(bz2, bz2, lambda a: a, lambda m: bz2.group.identity, name='trivialise')
        restrictions = dict(good.restrictions)
        restrictions[('V1', 'S')] = trivialise
        broken = Prestack(site, good.groupoids, restrictions, name='broken')
        kinds = {issue['kind'] for issue in validate_prestack(broken).issues}
        assert 'strictness' in kinds

    def test_unknown_prestack(self):
        with pytest.raises(DeskError) as info:
            prestack_builtin(site_builtin('circle2'), 'sheafOfRings')
        assert info.value.code == UNKNOWN_BUILTIN


class TestCech:
    def test_level_sizes_for_the_circle(self):
        site = site_builtin('circle2')
        diagram = cech_diagram(site, 'S', ('U1', 'U2'), constant_bg(site, 'Z2'))
        assert [len(level) for level in diagram.slots] == [2, 6, 14]

    @pytest.mark.parametrize('group,components', [('Z2', 2), ('S3', 3), ('Z4', 4)])
    def test_holim_counts_conjugacy_classes(self, group, components):
        site = site_builtin('circle2')
        diagram = cech_diagram(site, 'S', ('U1', 'U2'), constant_bg(site, group))
        assert pi0(holim2(diagram)).count == components

    def test_trivial_cover_has_a_one_point_holim(self):
        site = site_builtin('circle2')
        verdict = check_cover(site, constant_bg(site, 'S3'), 'S', ('S',))
        assert verdict.holds
        assert verdict.pi0_holim == 1

    def test_member_must_lie_over_the_object(self):
        site = site_builtin('circle2')
        with pytest.raises(DeskError) as info:
            cech_diagram(site, 'U1', ('U2',), constant_bg(site, 'Z2'))
        assert info.value.code == INVALID_DIAGRAM

    def test_unrecorded_overlap(self):
        site = two_arcs_without_overlap()
        prestack = Prestack(site, {u: GroupGroupoid(group_builtin('Z2')) for u in site.objects}, {})
        with pytest.raises(DeskError) as info:
            cech_diagram(site, 'X', ('A', 'B'), prestack)
        assert info.value.code == MISSING_PULLBACK

    def test_nested_overlap_pieces_resolve_by_label(self):
        # A ×_X B recorded as R then Q with Q inside R
        objects = ['A', 'B', 'Q', 'R', 'X']
        arrows = {(o, o): f"id_{o}" for o in objects}
        arrows.update({(a, b): f"{a}<{b}" for a, b in [('A', 'X'), ('B', 'X'), ('Q', 'R'), ('Q', 'A'),
                                                       ('Q', 'B'), ('Q', 'X'), ('R', 'A'), ('R', 'B'),
                                                       ('R', 'X')]})
        covers = {o: [(o,)] for o in objects}
        covers['X'].append(('A', 'B'))
        site = Site(objects, arrows, covers, {frozenset(('A', 'B')): ('R', 'Q')}, name='nested')
        diagram = cech_diagram(site, 'X', ('A', 'B'), constant_bg(site, 'Z2'))
        level1, level2 = diagram.slots[1], diagram.slots[2]
        for piece in ('Q', 'R'):
            chosen = diagram.d2_2.sources[level2.index(((0, 1, 1), piece))]
            assert level1[chosen] == ((0, 1), piece)

    def test_holim_refuses_a_non_cosimplicial_diagram(self):
        bz2 = GroupGroupoid(group_builtin('Z2'))
        collapse = GroupoidFunctor(bz2, bz2, lambda a: a, lambda m: bz2.identity('*'))
        with pytest.raises(DeskError) as info:
            holim2(replace(constant_diagram(bz2), s0_0=collapse))
        assert info.value.code == INVALID_DIAGRAM


class TestDescent:
    def test_constant_bg_is_not_a_stack_on_the_circle(self):
        site = site_builtin('circle2')
        report = descent_check(site, constant_bg(site, 'Z2'), threads=1)
        assert not report.ok
        failing = [c for c in report.covers if not c.holds]
        assert [(c.object, c.family) for c in failing] == [('S', ('U1', 'U2'))]
        assert (failing[0].pi0_value, failing[0].pi0_holim) == (1, 2)
        assert not failing[0].verdict.essentially_surjective

    def test_file_inputs_agree_with_the_builtin(self, file_site, data_dir):
        prestack = Prestack.from_dict(file_site, load(data_dir, 'constant_bz2.json'))
        report = descent_check(file_site, prestack, threads=1)
        assert not report.ok
        assert report.to_payload()['is_stack'] is False

    def test_functions_satisfy_descent(self):
        site = site_builtin('discrete2')
        assert descent_check(site, functions(site, 2), threads=1).ok

    def test_representable_satisfies_descent(self):
        site = site_builtin('circle2')
        assert descent_check(site, representable(site, 'U1'), threads=1).ok

    @settings(max_examples=30, deadline=None)
    @given(small_topologies(), st.data())
    def test_representables_satisfy_descent_on_small_sites(self, topology, data):
        site = covered_site(*topology)
        assert validate_site(site).ok
        target = data.draw(st.sampled_from(site.objects))
        assert descent_check(site, representable(site, target), threads=1).ok

    def test_threads_do_not_change_the_report(self):
        site = site_builtin('circle2')
        prestack = constant_bg(site, 'S3')
        single = descent_check(site, prestack, threads=1).to_payload()
        pooled = descent_check(site, prestack, threads=4).to_payload()
        assert single == pooled

    def test_invalid_site_is_refused(self):
        site = Site(['X'], {('X', 'X'): 'id_X'}, {})
        with pytest.raises(ValidationError):
            descent_check(site, constant_bg(site, 'Z2'))
