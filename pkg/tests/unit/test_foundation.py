"""
Tests for exact linear algebra, sparse vectors and cochain complexes.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.foundation import (CochainComplex, GradedVectorSpace, Matrix, add_into, cohomology_dims,
                            combine, parity_sign, rank, reduce_modulo, solve, solve_linear,
                            span_basis)
from src.utils.errors import ComplexNotClosedError, DeskError, COMPLEX_NOT_CLOSED

pytestmark = pytest.mark.unit

small_ints = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
            .map(lambda rows: Matrix(r, c, rows))))


class TestMatrix:
    def test_entries_are_fractions(self):
        m = Matrix(1, 2, [[1, '1/2']])
        assert m.entry(0, 1) == Fraction(1, 2)
        assert isinstance(m.entry(0, 0), Fraction)

    def test_shape_mismatch_is_rejected(self):
        with pytest.raises(DeskError):
            Matrix(2, 2, [[1, 2]])

    def test_product_and_identity(self):
        m = Matrix(2, 2, [[1, 2], [3, 4]])
        assert m @ Matrix.identity(2) == m
        assert (m @ m).to_lists() == [[7, 10], [15, 22]]

    def test_incompatible_product_raises(self):
        with pytest.raises(DeskError):
            Matrix.zeros(2, 3) @ Matrix.zeros(2, 3)

    def test_kron_shape_and_entries(self):
        a = Matrix(1, 2, [[1, 2]])
        b = Matrix(2, 1, [[3], [4]])
        k = a.kron(b)
        assert k.shape == (2, 2)
        assert k.to_lists() == [[3, 6], [4, 8]]

    def test_empty_shapes_compose(self):
        assert (Matrix.zeros(0, 1) @ Matrix.zeros(1, 1)) == Matrix.zeros(0, 1)


class TestElimination:
    def test_kernel_of_rank_one(self):
        r, kernel = solve(Matrix(1, 3, [[1, 1, 1]]))
        assert r == 1
        assert kernel == [(-1, 1, 0), (-1, 0, 1)]

    def test_solve_linear_particular_solution(self):
        m = Matrix(2, 2, [[2, 0], [0, 4]])
        assert solve_linear(m, [1, 1]) == (Fraction(1, 2), Fraction(1, 4))

    def test_solve_linear_inconsistent(self):
        assert solve_linear(Matrix(2, 1, [[1], [1]]), [0, 1]) is None

    def test_reduce_modulo_identifies_congruent_vectors(self):
        subspace = [(1, 1, 0)]
        a = reduce_modulo((2, 3, 1), subspace, 3)
        b = reduce_modulo((0, 1, 1), subspace, 3)
        assert a == b

    def test_span_basis_drops_dependent_vectors(self):
        assert len(span_basis([(1, 2), (2, 4), (0, 1)], 2)) == 2

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_kernel_vectors_are_annihilated(self, m):
        r, kernel = solve(m)
        assert r + len(kernel) == m.cols
        for vector in kernel:
            assert all(x == 0 for x in m.apply(vector))

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_rank_of_transpose(self, m):
        assert rank(m) == rank(m.transpose())


class TestSparse:
    def test_add_into_drops_cancellations(self):
        target = {0: Fraction(1)}
        add_into(target, {0: 1, 1: 2}, -1)
        assert target == {1: -2}

    def test_combine(self):
        assert combine(({0: 1}, 2), ({0: 1, 2: 1}, -2)) == {2: -2}

    @pytest.mark.parametrize('n,sign', [(0, 1), (1, -1), (-1, -1), (-2, 1)])
    def test_parity_sign(self, n, sign):
        assert parity_sign(n) == sign


class TestCochainComplex:
    def test_circle_cohomology(self):
        # 0 → ℚ² → ℚ² → 0 with d = [[1, -1], [-1, 1]]
        spaces = GradedVectorSpace.from_dims({0: 2, 1: 2})
        c = CochainComplex(spaces, {0: Matrix(2, 2, [[1, -1], [-1, 1]])})
        assert cohomology_dims(c) == {0: 1, 1: 1}

    def test_wrong_shape_is_rejected(self):
        spaces = GradedVectorSpace.from_dims({0: 2, 1: 1})
        with pytest.raises(DeskError):
            CochainComplex(spaces, {0: Matrix.zeros(2, 2)})

    def test_unclosed_complex_raises(self):
        spaces = GradedVectorSpace.from_dims({0: 1, 1: 1, 2: 1})
        c = CochainComplex(spaces, {0: Matrix(1, 1, [[1]]), 1: Matrix(1, 1, [[1]])})
        assert c.first_unclosed_degree() == 0
        with pytest.raises(ComplexNotClosedError) as info:
            cohomology_dims(c)
        assert info.value.code == COMPLEX_NOT_CLOSED
        assert info.value.degree == 0

    def test_duplicate_labels_rejected(self):
        with pytest.raises(DeskError):
            GradedVectorSpace({0: ('a', 'a')})
