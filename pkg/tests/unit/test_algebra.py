"""
Tests for Lie algebras, modules, pairings, GCAs, DGLAs, finite groups and the builtin catalog.
"""
import json
from fractions import Fraction

import pytest

from src.algebra import (GCA, InvariantPairing, LieAlgebra, LieModule, StructureValidator, build_dgla,
                         group_builtin, gravity, heisenberg3, interval_forms, iso21, lie_builtin,
                         module_builtin, pairing_builtin, resolve_builtin, resolve_dgla, sl2,
                         surface_gca, torus_gca, validate_group, FiniteGroup)
from src.foundation import CochainComplex, GradedVectorSpace, cohomology_dims
from src.foundation import Matrix
from src.utils.errors import (DeskError, ParseError, ValidationError, INVALID_INPUT,
                              UNKNOWN_BUILTIN)

pytestmark = pytest.mark.unit


def load(data_dir, name):
    return json.loads((data_dir / name).read_text())


class TestLieAlgebras:
    @pytest.mark.parametrize('lie', [sl2(), heisenberg3(), iso21(), gravity(Fraction(1)),
                                     gravity(Fraction(-1, 2))], ids=lambda l: l.name)
    def test_builtins_satisfy_the_axioms(self, lie):
        assert StructureValidator.validate_lie(lie).ok

    def test_antisymmetry_is_filled_in(self):
        lie = sl2()
        assert lie.bracket_basis(1, 0) == {2: -1}

    def test_file_matches_builtin(self, data_dir):
        from_file = LieAlgebra.from_dict(load(data_dir, 'iso21.json'))
        assert from_file.structure_constants() == iso21().structure_constants()

    def test_jacobi_violation_is_reported(self, data_dir):
        report = StructureValidator.validate_lie(LieAlgebra.from_dict(load(data_dir, 'bad_jacobi.json')))
        assert not report.ok
        assert [issue['kind'] for issue in report.issues] == ['jacobi']
        assert report.issues[0]['triple'] == ['a', 'b', 'c']

    def test_inconsistent_antisymmetry_is_reported(self):
        lie = LieAlgebra(['x', 'y'], {(0, 1): {0: 1}, (1, 0): {0: 1}})
        kinds = {issue['kind'] for issue in StructureValidator.validate_lie(lie).issues}
        assert 'antisymmetry' in kinds

    def test_unknown_label_in_file(self):
        with pytest.raises(ParseError):
            LieAlgebra.from_dict({'basis': ['x'], 'brackets': {'x,z': {'x': 1}}})

    def test_splitting_of_iso21(self):
        assert StructureValidator.validate_splitting(iso21()).ok
        assert not StructureValidator.validate_splitting(sl2()).ok


class TestModulesAndPairings:
    @pytest.mark.parametrize('name', ['trivial', 'adjoint', 'coadjoint', 'standard'])
    def test_sl2_modules(self, name):
        assert StructureValidator.validate_module(module_builtin(sl2(), name)).ok

    def test_module_file(self, data_dir):
        module = LieModule.from_dict(sl2(), load(data_dir, 'sl2_standard.json'))
        assert module.dimension == 2
        assert StructureValidator.validate_module(module).ok

    def test_broken_module(self):
        identity = Matrix.identity(2)
        module = LieModule(sl2(), 2, [Matrix.zeros(2, 2), Matrix.zeros(2, 2), identity])
        report = StructureValidator.validate_module(module)
        assert not report.ok

    def test_iso21_pairing_is_invariant_and_nondegenerate(self):
        report = StructureValidator.validate_pairing(pairing_builtin(iso21()))
        assert report.ok
        assert report.info['nondegenerate'] is True

    def test_trace_file_matches_builtin(self, data_dir):
        lie = sl2()
        from_file = InvariantPairing.from_dict(lie, load(data_dir, 'sl2_trace.json'))
        assert from_file.gram == pairing_builtin(lie, 'trace').gram
        assert StructureValidator.validate_pairing(from_file).ok

    def test_killing_form_of_heisenberg_is_degenerate(self):
        report = StructureValidator.validate_pairing(pairing_builtin(heisenberg3(), 'killing'))
        assert report.ok
        assert report.info['nondegenerate'] is False

    def test_sl2_has_no_default_pairing(self):
        with pytest.raises(DeskError) as info:
            pairing_builtin(sl2())
        assert info.value.code == INVALID_INPUT

    def test_wrong_gram_size(self):
        with pytest.raises(ParseError):
            InvariantPairing.from_dict(sl2(), {'gram': [1, 0, 0, 1]})


class TestGCA:
    @pytest.mark.parametrize('gca', [torus_gca(1), torus_gca(3), surface_gca(2), interval_forms(2)],
                             ids=lambda g: g.name)
    def test_builtins_satisfy_the_axioms(self, gca):
        assert StructureValidator.validate_gca(gca).ok

    def test_torus_is_graded_commutative(self):
        gca = torus_gca(2)
        th1, th2 = gca.index('th1'), gca.index('th2')
        assert gca.product_basis(th1, th2) == {gca.index('th1th2'): 1}
        assert gca.product_basis(th2, th1) == {gca.index('th1th2'): -1}
        assert gca.product_basis(th1, th1) == {}

    def test_integration_on_top_degree(self):
        gca = surface_gca(1)
        product = gca.multiply({gca.index('a1'): Fraction(1)}, {gca.index('b1'): Fraction(1)})
        assert gca.integrate(product) == 1

    def test_weight_truncated_interval_is_acyclic(self):
        gca = interval_forms(1)
        spaces = GradedVectorSpace({0: tuple(gca.names[i] for i in gca.basis_in_degree(0)),
                                    1: tuple(gca.names[i] for i in gca.basis_in_degree(1))})
        complex_ = CochainComplex(spaces, {0: gca.differential_matrix(0)})
        assert cohomology_dims(complex_) == {0: 1, 1: 0}
        assert spaces.dim(1) == 2
        assert StructureValidator.validate_gca(gca).ok

    def test_coefficient_degree_truncation_breaks_leibniz(self):
        # {1, t} and {dt, t dt}: t*t falls outside, yet d(t)*t + t*d(t) = 2 t dt
        naive = GCA(['1', 't', 'dt', 'tdt'], [0, 0, 1, 1],
                    {(1, 2): {3: 1}, (2, 1): {3: 1}}, differential={1: {2: 1}},
                    name='interval_coefficient_degree(1)')
        report = StructureValidator.validate_gca(naive)
        assert not report.ok
        assert ['t', 't'] in [issue['pair'] for issue in report.issues if issue['kind'] == 'leibniz']

    def test_file_gca(self, data_dir):
        gca = GCA.from_dict(load(data_dir, 'circle_gca.json'))
        assert gca.degrees == (0, 1)
        assert StructureValidator.validate_gca(gca).ok

    def test_odd_square_violates_commutativity(self):
        gca = GCA(['1', 'x'], [0, 1], {(1, 1): {}})
        bad = GCA(['1', 'x', 'y'], [0, 1, 2], {(1, 1): {2: 1}})
        assert StructureValidator.validate_gca(gca).ok
        kinds = {issue['kind'] for issue in StructureValidator.validate_gca(bad).issues}
        assert 'graded_commutativity' in kinds


class TestDGLA:
    def test_component_dims(self):
        dgla = build_dgla(torus_gca(2), sl2())
        assert dgla.component_dims() == {0: 3, 1: 6, 2: 3}

    def test_tensor_structure_validates(self):
        assert StructureValidator.validate_dgla(build_dgla(torus_gca(1), sl2())).ok
        assert StructureValidator.validate_dgla(build_dgla(interval_forms(1), heisenberg3())).ok

    def test_invalid_factor_is_rejected(self):
        bad = GCA(['1', 'x', 'y'], [0, 1, 2], {(1, 1): {2: 1}})
        with pytest.raises(ValidationError) as info:
            build_dgla(bad, sl2())
        assert info.value.code == INVALID_INPUT

    def test_curved_background_is_rejected(self):
        dgla = build_dgla(torus_gca(2), sl2())
        background = {dgla.index_of('th1', 'E'): Fraction(1), dgla.index_of('th2', 'F'): Fraction(1)}
        with pytest.raises(DeskError) as info:
            dgla.twisted(background)
        assert 'curvature' in info.value.details

    def test_flat_background_twists_the_differential(self):
        dgla = build_dgla(torus_gca(1), sl2())
        twisted = dgla.twisted({dgla.index_of('th1', 'H'): Fraction(1)})
        image = twisted.d({dgla.index_of('1', 'E'): Fraction(1)})
        assert image == {dgla.index_of('th1', 'E'): 2}
        assert StructureValidator.validate_dgla(twisted).ok

    def test_resolve_in_either_order(self):
        assert resolve_dgla('sl2*torus_gca(1)').name == resolve_dgla('torus_gca(1)*sl2').name


class TestGroups:
    @pytest.mark.parametrize('name,order,classes', [
        ('Z2', 2, 2), ('Z4', 4, 4), ('S3', 6, 3), ('D4', 8, 5), ('Q8', 8, 5),
    ])
    def test_bundled_groups(self, name, order, classes):
        group = group_builtin(name)
        assert group.order == order
        assert len(group.conjugacy_classes()) == classes
        assert validate_group(group).ok

    def test_group_file(self, data_dir):
        group = FiniteGroup.from_dict(load(data_dir, 'z3.json'))
        assert group.order == 3
        assert group.inv(1) == 2
        assert validate_group(group).ok

    def test_non_associative_table(self):
        table = [[0, 1, 2], [1, 0, 1], [2, 2, 0]]
        report = validate_group(FiniteGroup(table))
        assert any(issue['kind'] == 'associativity' for issue in report.issues)

    def test_subgroup_generated(self):
        s3 = group_builtin('S3')
        transposition = s3.element('(12)')
        assert len(s3.subgroup([transposition])) == 2

    def test_unknown_group(self):
        with pytest.raises(DeskError) as info:
            group_builtin('G7')
        assert info.value.code == UNKNOWN_BUILTIN


class TestCatalog:
    def test_resolve_builtin_prefix(self):
        assert resolve_builtin('builtin:torus_gca(2)').name == 'torus_gca(2)'

    def test_unknown_builtin(self):
        with pytest.raises(DeskError) as info:
            resolve_builtin('so5')
        assert info.value.code == UNKNOWN_BUILTIN

    def test_bad_parameter(self):
        with pytest.raises(DeskError) as info:
            resolve_builtin('abelian(x)')
        assert info.value.code == UNKNOWN_BUILTIN

    def test_builtins_are_memoized(self):
        assert lie_builtin('sl2') is lie_builtin('sl2')

    def test_cache_can_be_disabled(self, mocker):
        mocker.patch('src.config.Config.CACHE_ENABLED', return_value=False)
        assert lie_builtin('sl2') is not lie_builtin('sl2')
