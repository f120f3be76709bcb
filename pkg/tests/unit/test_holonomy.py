"""
Tests for surface-group representations, their conjugation classes and transport groupoids.
"""
import pytest

from src.algebra import BUNDLED_GROUPS, group_builtin
from src.holonomy import (SurfaceRep, bundle_summary, conj_classes_of_reps, conjugate_rep,
                          conjugation_functor, enumerate_reps, rep_to_bundle, surface_relation)
from src.stacks import is_weak_equivalence, pi0, validate_functor, validate_groupoid
from src.utils.errors import DeskError, BUDGET_EXCEEDED, INVALID_INPUT

pytestmark = pytest.mark.unit


class TestEnumeration:
    @pytest.mark.parametrize('genus,group,count', [
        (1, 'Z2', 4), (1, 'S3', 18), (1, 'Z4', 16), (2, 'Z2', 16),
    ])
    def test_hom_counts(self, genus, group, count):
        assert enumerate_reps(genus, group_builtin(group), threads=1).count == count

    @pytest.mark.parametrize('name', BUNDLED_GROUPS)
    def test_commuting_pairs_count_classes(self, name):
        # |Hom(Z², G)| = |G| · (number of conjugacy classes)
        group = group_builtin(name)
        assert enumerate_reps(1, group, threads=1).count == group.order * len(group.conjugacy_classes())

    def test_listing_is_lexicographic(self):
        reps = enumerate_reps(1, group_builtin('S3'), threads=1).reps
        assert reps == sorted(reps)
        assert all(rep.is_valid(group_builtin('S3')) for rep in reps)

    def test_threads_do_not_change_the_listing(self):
        s3 = group_builtin('S3')
        assert enumerate_reps(1, s3, threads=1).reps == enumerate_reps(1, s3, threads=4).reps

    def test_payload_listing(self):
        payload = enumerate_reps(1, group_builtin('Z2'), threads=1).to_payload(listing=True)
        assert payload['count'] == 4
        assert len(payload['reps']) == 4

    def test_budget_argument(self):
        with pytest.raises(DeskError) as info:
            enumerate_reps(2, group_builtin('S3'), budget=100)
        assert info.value.code == BUDGET_EXCEEDED
        assert info.value.details == {'size': 6 ** 4, 'budget': 100}

    def test_budget_from_config(self, mocker):
        mocker.patch('src.config.Config.ENUMERATION_BUDGET', return_value=15)
        with pytest.raises(DeskError) as info:
            enumerate_reps(1, group_builtin('Z4'))
        assert info.value.code == BUDGET_EXCEEDED

    def test_genus_zero_is_rejected(self):
        with pytest.raises(DeskError) as info:
            enumerate_reps(0, group_builtin('Z2'))
        assert info.value.code == INVALID_INPUT


class TestConjugation:
    @pytest.mark.parametrize('genus,group,classes', [
        (1, 'S3', 8), (1, 'Z4', 16), (1, 'Z2', 4),
    ])
    def test_class_counts(self, genus, group, classes):
        assert conj_classes_of_reps(genus, group_builtin(group), threads=1).count == classes

    def test_orbit_sizes_add_up(self):
        s3 = group_builtin('S3')
        classes = conj_classes_of_reps(1, s3, threads=1)
        assert sum(classes.sizes) == 18
        assert all(s3.order % size == 0 for size in classes.sizes)

    def test_conjugation_preserves_the_relation(self):
        s3 = group_builtin('S3')
        rep = SurfaceRep.parse(['(12)', 'e'], s3)
        moved = conjugate_rep(rep, s3, s3.element('(123)'))
        assert moved.is_valid(s3)
        assert moved != rep


class TestBundles:
    def test_surface_relation_of_a_commuting_pair(self):
        z4 = group_builtin('Z4')
        assert surface_relation(z4, (1, 3)) == z4.identity

    def test_parse_needs_pairs(self):
        with pytest.raises(DeskError):
            SurfaceRep.parse(['(12)'], group_builtin('S3'))

    def test_components_are_cosets_of_the_image(self):
        s3 = group_builtin('S3')
        rep = SurfaceRep.parse(['(12)', 'e'], s3)
        bundle = rep_to_bundle(rep, s3)
        assert validate_groupoid(bundle).ok
        assert pi0(bundle).count == 3
        summary = bundle_summary(rep, s3)
        assert (summary['image_order'], summary['components']) == (2, 3)

    @pytest.mark.parametrize('labels,image_order,components', [
        (['(12)', 'e', '(123)', 'e'], 6, 1),
        (['(123)', '(132)'], 3, 2),
    ], ids=['genus2-surjective', 'genus1-rotations'])
    def test_component_count_is_the_index_of_the_image(self, labels, image_order, components):
        s3 = group_builtin('S3')
        summary = bundle_summary(SurfaceRep.parse(labels, s3), s3)
        assert (summary['image_order'], summary['components']) == (image_order, components)
        assert summary['genus'] == len(labels) // 2

    def test_trivial_rep_gives_a_trivial_cover(self):
        s3 = group_builtin('S3')
        rep = SurfaceRep.parse(['e', 'e'], s3)
        assert pi0(rep_to_bundle(rep, s3)).count == s3.order

    def test_non_commuting_pair_is_not_a_rep(self):
        s3 = group_builtin('S3')
        rep = SurfaceRep.parse(['(12)', '(123)'], s3)
        with pytest.raises(DeskError) as info:
            rep_to_bundle(rep, s3)
        assert info.value.code == INVALID_INPUT

    def test_conjugate_reps_have_equivalent_bundles(self):
        s3 = group_builtin('S3')
        rep = SurfaceRep.parse(['(12)', 'e'], s3)
        functor = conjugation_functor(rep, s3, s3.element('(123)'))
        assert validate_functor(functor).ok
        assert is_weak_equivalence(functor).holds
