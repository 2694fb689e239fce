from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signrank import (
    BoolMatrix,
    IndependentSet,
    MaximalityError,
    ResourceLimitError,
    exact_rank,
    exact_signed_rank,
    express_column,
    find_equal_sum_subsets,
    independent_set_bound_check,
    is_independent,
    maximal_independent_columns,
    signed_rectangle_decomposition,
    verify_decomposition,
)
from signrank.decompose import column_coefficients, max_independent_size

from conftest import bool_matrices
from reference import all_bool_matrices


def S(M, *cols):
    return IndependentSet(tuple(cols), M.m, M.n)


def combine(M, coeffs):
    return tuple(sum(c * M.rows[i][j] for j, c in coeffs.items()) for i in range(M.m))


class TestMaximalIndependentColumns:
    def test_identity(self):
        assert maximal_independent_columns(BoolMatrix.identity(2)).columns == (0, 1)

    def test_duplicates(self):
        assert maximal_independent_columns(BoolMatrix.ones(2, 2)).columns == (0,)

    def test_zero_column_never_joins(self):
        assert maximal_independent_columns(BoolMatrix([[0, 1], [0, 1]])).columns == (1,)

    def test_order(self):
        M = BoolMatrix([[1, 0, 1], [0, 1, 1]])
        assert maximal_independent_columns(M).columns == (0, 1)
        assert maximal_independent_columns(M, order=[2, 1, 0]).columns == (2, 1)

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            maximal_independent_columns(BoolMatrix.identity(6), cap=4)

    @settings(max_examples=150)
    @given(bool_matrices(max_m=4, max_n=6), st.randoms())
    def test_independent_and_maximal(self, M, rnd):
        order = list(range(M.n))
        rnd.shuffle(order)
        s = maximal_independent_columns(M, order)
        assert is_independent(M, s.columns)
        for c in range(M.n):
            if c not in s:
                assert not is_independent(M, s.columns + (c,))
        assert maximal_independent_columns(M, order) == s


class TestFindEqualSumSubsets:
    def test_sum_of_two(self):
        M = BoolMatrix([[1, 0, 1], [0, 1, 1]])
        assert find_equal_sum_subsets(M, S(M, 0, 1), 2) == ({0, 1}, {2})

    def test_duplicate(self):
        M = BoolMatrix([[1, 0, 1], [0, 1, 0]])
        assert find_equal_sum_subsets(M, S(M, 0, 1), 2) == ({0}, {2})

    def test_zero_column(self):
        M = BoolMatrix([[1, 0], [0, 0]])
        assert find_equal_sum_subsets(M, S(M, 0), 1) == (set(), {1})

    def test_not_maximal(self):
        M = BoolMatrix.identity(3)
        with pytest.raises(MaximalityError):
            find_equal_sum_subsets(M, S(M, 0, 1), 2)

    @given(bool_matrices(max_m=4, max_n=6))
    def test_disjoint_equal_sums(self, M):
        s = maximal_independent_columns(M)
        for c in range(M.n):
            if c in s:
                continue
            a, b = find_equal_sum_subsets(M, s, c)
            assert not a & b and c in b and c not in a
            assert a | b <= set(s.columns) | {c}
            colsum = lambda cols: tuple(sum(row[j] for j in cols) for row in M.rows)
            assert colsum(a) == colsum(b)


class TestExpressColumn:
    def test_sum(self):
        M = BoolMatrix([[1, 0, 1], [0, 1, 1]])
        assert express_column(M, S(M, 0, 1), 2) == {0: 1, 1: 1}

    def test_difference_matches_exhaustive_search(self):
        M = BoolMatrix([[1, 0, 1], [1, 1, 0]])
        target = M.column(2)
        found = [
            (a, b) for a, b in product((-1, 0, 1), repeat=2)
            if tuple(a * M.rows[i][0] + b * M.rows[i][1] for i in range(2)) == target
        ]
        assert found == [(1, -1)]
        assert express_column(M, S(M, 0, 1), 2) == {0: 1, 1: -1}

    def test_zero_column(self):
        M = BoolMatrix([[1, 0], [1, 0]])
        assert express_column(M, S(M, 0), 1) == {0: 0}

    def test_member_is_unit(self):
        M = BoolMatrix.identity(3)
        assert express_column(M, S(M, 0, 1, 2), 1) == {0: 0, 1: 1, 2: 0}

    @settings(max_examples=150)
    @given(bool_matrices(max_m=5, max_n=7))
    def test_every_column_reproduced(self, M):
        s = maximal_independent_columns(M)
        for c, coeffs in enumerate(column_coefficients(M, s)):
            assert set(coeffs) == set(s.columns)
            assert set(coeffs.values()) <= {-1, 0, 1}
            assert combine(M, coeffs) == M.column(c)


class TestSignedRectangleDecomposition:
    def test_all_ones_is_one_term(self):
        d = signed_rectangle_decomposition(BoolMatrix.ones(3, 4))
        assert len(d) == 1
        assert d.terms[0].sign == 1 and d.terms[0].rect.size == 12

    def test_zero_is_empty(self):
        assert len(signed_rectangle_decomposition(BoolMatrix.zeros(2, 3))) == 0

    def test_l_shape(self):
        M = BoolMatrix([[1, 1], [1, 0]])
        d = signed_rectangle_decomposition(M)
        assert verify_decomposition(M, d)
        assert exact_signed_rank(M).value == 2 <= len(d) <= 4

    def test_all_3x3(self):
        for rows in all_bool_matrices(3, 3):
            M = BoolMatrix(rows)
            s = maximal_independent_columns(M)
            d = signed_rectangle_decomposition(M)
            assert verify_decomposition(M, d)
            assert len(d) <= 2 * len(s)

    @settings(max_examples=200)
    @given(bool_matrices(max_m=6, max_n=8))
    def test_properties(self, M):
        s = maximal_independent_columns(M)
        d = signed_rectangle_decomposition(M)
        r = exact_rank(M)
        assert verify_decomposition(M, d)
        assert len(d) <= 2 * len(s)
        assert len(s) <= min(M.n, max_independent_size(r))
        assert independent_set_bound_check(len(s), r)
        assert signed_rectangle_decomposition(M) == d

    @given(bool_matrices(max_m=4, max_n=5))
    def test_at_most_one_term_per_sign_per_basis_column(self, M):
        s = maximal_independent_columns(M)
        d = signed_rectangle_decomposition(M)
        supports = {frozenset(i for i in range(M.m) if M.rows[i][c]) for c in s}
        for t in d.terms:
            assert t.rect.rows in supports
        keys = [(t.sign, t.rect.rows) for t in d.terms]
        # basis columns have distinct supports (no duplicates in an independent set)
        assert len(keys) == len(set(keys))

    def test_explicit_basis(self):
        M = BoolMatrix([[1, 0, 1], [0, 1, 1]])
        d = signed_rectangle_decomposition(M, basis=maximal_independent_columns(M, [2, 0, 1]))
        assert verify_decomposition(M, d)


class TestBoundCheck:
    @pytest.mark.parametrize(
        "size,r,expected", [(0, 0, True), (4, 2, True), (5, 1, False), (1, 1, True), (2, 1, False)]
    )
    def test_values(self, size, r, expected):
        assert independent_set_bound_check(size, r) is expected

    def test_negative(self):
        with pytest.raises(ValueError):
            independent_set_bound_check(-1, 2)

    def test_max_size(self):
        for r in range(12):
            s = max_independent_size(r)
            assert independent_set_bound_check(s, r)
            assert not any(independent_set_bound_check(t, r) for t in range(s + 1, 40 * (r + 1)))
