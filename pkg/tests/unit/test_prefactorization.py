"""
Tests for tensor complexes, prefactorization checks and the classical observables model.
"""
import json

import pytest

from src.foundation import CochainComplex, GradedVectorSpace, Matrix, cohomology_dims
from src.stacks import (ObsModel, PrefactData, StructureMap, TensorComplex, obs_assignment,
                        prefact_check, reorder, validate_prefact)
from src.utils.errors import (DeskError, ParseError, ValidationError, DEGREE_BOUND_EXCEEDED,
                              NOT_DISJOINT_POSET)

pytestmark = pytest.mark.unit


def prefact(data_dir, name):
    return PrefactData.from_dict(json.loads((data_dir / name).read_text()), name)


def point(degree=0):
    return CochainComplex(GradedVectorSpace.from_dims({degree: 1}))


class TestTensorComplex:
    def test_koszul_sign_in_the_differential(self):
        interval = CochainComplex(GradedVectorSpace.from_dims({0: 1, 1: 1}), {0: Matrix(1, 1, [[1]])})
        tensor = TensorComplex([interval, interval])
        assert tensor.dim(1) == 2
        assert tensor.differential(0).to_lists() == [[1], [1]]
        assert tensor.differential(1).to_lists() == [[1, -1]]

    def test_tensor_of_acyclic_complexes_is_acyclic(self):
        interval = CochainComplex(GradedVectorSpace.from_dims({0: 1, 1: 1}), {0: Matrix(1, 1, [[1]])})
        tensor = TensorComplex([interval, interval])
        spaces = GradedVectorSpace.from_dims({n: tensor.dim(n) for n in tensor.degrees()})
        complex_ = CochainComplex(spaces, {n: tensor.differential(n) for n in tensor.degrees()[:-1]})
        assert set(cohomology_dims(complex_).values()) == {0}

    @pytest.mark.parametrize('x,perm,sign', [
        (((1, 0), (1, 0)), [1, 0], -1),
        (((1, 0), (2, 0)), [1, 0], 1),
        (((1, 0), (1, 0), (1, 0)), [1, 2, 0], 1),
        (((1, 0), (0, 0), (1, 0)), [2, 1, 0], -1),
    ])
    def test_reorder_sign(self, x, perm, sign):
        got, y = reorder(x, perm)
        assert got == sign
        assert y == tuple(x[p] for p in perm)


class TestPrefactCheck:
    def test_signed_odd_points_pass(self, data_dir):
        report = prefact_check(prefact(data_dir, 'prefact_odd.json'))
        assert report.ok
        assert report.checked['permutation'] == 1

    def test_unsigned_swap_fails_invariance(self, data_dir):
        report = prefact_check(prefact(data_dir, 'prefact_unsigned.json'))
        assert not report.ok
        assert [f['kind'] for f in report.failures] == ['permutation']
        assert report.failures[0]['degree'] == 2

    def test_constant_line_is_associative(self, data_dir):
        report = prefact_check(prefact(data_dir, 'prefact_constant.json'))
        assert report.ok
        assert report.checked['associativity'] == 1

    def test_broken_composite_is_caught(self, data_dir):
        data = prefact(data_dir, 'prefact_constant.json')
        data.maps[-1] = StructureMap(('A', 'B', 'C'), 'ABC', {0: Matrix(1, 1, [[2]])})
        failures = prefact_check(data).failures
        assert [f['kind'] for f in failures] == ['associativity']
        assert failures[0]['through'] == '(AB, C) -> ABC'

    def test_non_chain_map(self):
        interval = CochainComplex(GradedVectorSpace.from_dims({0: 1, 1: 1}), {0: Matrix(1, 1, [[1]])})
        data = PrefactData(['A', 'B'], [('A', 'B')], [], {'A': point(), 'B': interval},
                           [StructureMap(('A',), 'B', {0: Matrix(1, 1, [[1]])})])
        failures = prefact_check(data).failures
        assert failures == [{'kind': 'chain_map', 'map': '(A) -> B', 'degree': 0}]

    def test_overlapping_sources_are_rejected(self):
        data = PrefactData(['A', 'B', 'AB'], [('A', 'AB'), ('B', 'AB')], [],
                           {u: point() for u in ('A', 'B', 'AB')},
                           [StructureMap(('A', 'B'), 'AB', {0: Matrix(1, 1, [[1]])})])
        kinds = [issue['kind'] for issue in validate_prefact(data).issues]
        assert kinds == ['sources_not_disjoint']
        with pytest.raises(ValidationError):
            prefact_check(data)

    def test_wrong_matrix_shape(self):
        data = PrefactData(['A', 'B'], [('A', 'B')], [], {'A': point(), 'B': point()},
                           [StructureMap(('A',), 'B', {0: Matrix.zeros(2, 1)})])
        issue = validate_prefact(data).issues[0]
        assert issue['kind'] == 'shape'
        assert issue['expected'] == [1, 1]

    def test_disjointness_must_be_inherited(self):
        data = PrefactData(['A', 'a', 'B'], [('a', 'A')], [('A', 'B')],
                           {u: point() for u in ('A', 'a', 'B')}, [])
        kinds = [issue['kind'] for issue in validate_prefact(data).issues]
        assert kinds == ['disjointness_not_inherited']

    def test_malformed_file(self):
        with pytest.raises(ParseError):
            PrefactData.from_dict({'opens': ['A'], 'complexes': {}})


class TestObservables:
    def test_single_patch_linear_polynomials(self):
        model = ObsModel({'P': 2}, {'P': ('P',)})
        data = obs_assignment(model, 1)
        assert data.complexes['P'].spaces.dim(0) == 3
        assert data.complexes['P'].spaces.components[0] == ('1', 'P.0', 'P.1')

    def test_two_points_file(self, data_dir):
        model = ObsModel.from_dict(json.loads((data_dir / 'obs_two_points.json').read_text()))
        data = obs_assignment(model, 2)
        assert data.complexes['PQ'].spaces.dim(0) == 6
        assert sorted(m.sources for m in data.maps if m.target == 'PQ') == [
            ('P',), ('P', 'Q'), ('Q',), ('Q', 'P')]

    def test_observables_form_prefactorization_data(self, data_dir):
        model = ObsModel.from_dict(json.loads((data_dir / 'obs_two_points.json').read_text()))
        report = prefact_check(obs_assignment(model, 2))
        assert report.ok
        assert report.checked['permutation'] == 1

    def test_three_patches_are_associative(self):
        model = ObsModel({'P': 1, 'Q': 1, 'R': 1}, {'PQ': ('P', 'Q'), 'PQR': ('P', 'Q', 'R')})
        report = prefact_check(obs_assignment(model, 2))
        assert report.ok
        assert report.checked['associativity'] > 0

    def test_patch_from_a_dgla(self):
        model = ObsModel.from_dict({'patches': {'P': 'torus_gca(1)*abelian(1)'}})
        assert model.patches == {'P': 1}

    def test_overlapping_unions_are_not_a_disjoint_poset(self):
        model = ObsModel({'P': 1}, {'P': ('P',), 'PP': ('P',)})
        with pytest.raises(DeskError) as info:
            obs_assignment(model, 1)
        assert info.value.code == NOT_DISJOINT_POSET

    def test_unknown_patch(self):
        model = ObsModel({'P': 1}, {'P': ('P',), 'PZ': ('P', 'Z')})
        with pytest.raises(DeskError) as info:
            obs_assignment(model, 1)
        assert info.value.code == NOT_DISJOINT_POSET

    def test_degree_bound_is_configured(self, mocker):
        mocker.patch('src.config.Config.MAX_POLY_DEGREE', return_value=2)
        with pytest.raises(DeskError) as info:
            obs_assignment(ObsModel({'P': 1}, {'P': ('P',)}), 3)
        assert info.value.code == DEGREE_BOUND_EXCEEDED
