"""
Tests for Chevalley–Eilenberg complexes, cohomology and homology.
"""
import pytest

from src.algebra import LieAlgebra, LieModule, abelian, heisenberg3, iso21, module_builtin, sl2
from src.ce import (CEComplexSpec, Direction, ce_chain_complex, ce_cochain_complex,
                    invariant_dimension, lie_cohomology, lie_homology, wedges)
from src.utils.errors import DeskError, ValidationError, BUDGET_EXCEEDED

pytestmark = pytest.mark.unit


@pytest.mark.parametrize('lie,expected', [
    (sl2(), {0: 1, 1: 0, 2: 0, 3: 1}),
    (heisenberg3(), {0: 1, 1: 2, 2: 2, 3: 1}),
    (abelian(2), {0: 1, 1: 2, 2: 1}),
], ids=['sl2', 'heisenberg3', 'abelian2'])
class TestTrivialCoefficients:
    def test_cohomology(self, lie, expected):
        assert lie_cohomology(CEComplexSpec(lie)) == expected

    def test_homology_matches_for_unimodular_algebras(self, lie, expected):
        assert lie_homology(CEComplexSpec(lie, direction=Direction.HOMOLOGY)) == expected


class TestCoefficients:
    def test_whitehead_vanishing_for_adjoint_sl2(self):
        spec = CEComplexSpec(sl2(), module_builtin(sl2(), 'adjoint'))
        assert lie_cohomology(spec) == {0: 0, 1: 0, 2: 0, 3: 0}

    def test_degree_zero_is_the_invariants(self):
        lie = heisenberg3()
        adjoint = LieModule.adjoint(lie)
        assert lie_cohomology(CEComplexSpec(lie, adjoint))[0] == invariant_dimension(adjoint) == 1

    def test_invariants_of_standard_sl2(self):
        assert invariant_dimension(module_builtin(sl2(), 'standard')) == 0
        assert invariant_dimension(LieModule.trivial(sl2(), 2)) == 2

    def test_cochain_dimensions_count_wedges_times_module(self):
        lie = iso21()
        complex_ = ce_cochain_complex(CEComplexSpec(lie, max_degree=2))
        assert [complex_.spaces.dim(n) for n in complex_.degrees()] == [1, 6, 15, 20]
        assert len(wedges(6, 2)) == 15


class TestTruncationAndErrors:
    def test_max_degree_truncates(self):
        assert lie_cohomology(CEComplexSpec(sl2(), max_degree=1)) == {0: 1, 1: 0}

    def test_max_degree_out_of_range(self):
        with pytest.raises(DeskError):
            lie_cohomology(CEComplexSpec(sl2(), max_degree=4))

    def test_direction_must_match(self):
        with pytest.raises(DeskError):
            ce_chain_complex(CEComplexSpec(sl2()))
        with pytest.raises(DeskError):
            ce_cochain_complex(CEComplexSpec(sl2(), direction=Direction.HOMOLOGY))

    def test_invalid_algebra_is_rejected(self):
        bad = LieAlgebra(['a', 'b', 'c'], {(0, 1): {0: 1}, (1, 2): {1: 1}, (0, 2): {2: 1}})
        with pytest.raises(ValidationError):
            ce_cochain_complex(CEComplexSpec(bad))

    def test_threads_do_not_change_the_complex(self, mocker):
        single = ce_cochain_complex(CEComplexSpec(heisenberg3()))
        mocker.patch('src.config.Config.THREADS', return_value=4)
        threaded = ce_cochain_complex(CEComplexSpec(heisenberg3()))
        assert single.differentials == threaded.differentials

    def test_dimension_limit(self, mocker):
        mocker.patch('src.config.Config.MAX_DIMENSION', return_value=10)
        with pytest.raises(DeskError) as info:
            lie_cohomology(CEComplexSpec(iso21()))
        assert info.value.code == BUDGET_EXCEEDED
        assert info.value.details == {'size': 20, 'budget': 10}
