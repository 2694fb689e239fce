import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from signrank import (
    BoolMatrix,
    ResourceLimitError,
    exact_partition_number,
    exact_rank,
    exact_signed_rank,
    max_monochromatic_rectangle,
    signed_rectangle_decomposition,
    verify_decomposition,
)

from conftest import bool_matrices
from reference import all_bool_matrices, brute_max_mono, brute_partition_number, brute_signed_rank

L_SHAPE = BoolMatrix([[1, 1], [1, 0]])


def text_matrix(text):
    return BoolMatrix([[int(ch) for ch in row] for row in text.split()])


def is_partition(M, witness):
    cells = set()
    for t in witness.terms:
        assert t.sign == 1
        for i in t.rect.rows:
            for j in t.rect.cols:
                assert M.rows[i][j] == 1
                assert (i, j) not in cells
                cells.add((i, j))
    return cells == {(i, j) for i in range(M.m) for j in range(M.n) if M.rows[i][j]}


class TestPartitionNumber:
    def test_all_ones(self):
        assert exact_partition_number(BoolMatrix.ones(3, 3)).value == 1

    def test_identity(self):
        res = exact_partition_number(BoolMatrix.identity(3))
        assert res.value == 3 and res.exhausted

    def test_l_shape(self):
        assert brute_partition_number(L_SHAPE.rows) == 2
        assert exact_partition_number(L_SHAPE).value == 2

    def test_zero(self):
        res = exact_partition_number(BoolMatrix.zeros(2, 2))
        assert res.value == 0 and len(res.witness) == 0 and res.exhausted

    def test_matches_brute_force_on_all_3x3(self):
        for rows in all_bool_matrices(3, 3):
            M = BoolMatrix(rows)
            res = exact_partition_number(M)
            assert res.exhausted
            assert res.value == brute_partition_number(rows)
            assert is_partition(M, res.witness)

    def test_random_4x5_against_brute_force(self):
        rng = random.Random(3)
        for _ in range(25):
            rows = [[rng.randint(0, 1) for _ in range(5)] for _ in range(4)]
            assert exact_partition_number(BoolMatrix(rows)).value == brute_partition_number(rows)

    def test_budget(self):
        M = text_matrix("11111111 10111011 00011100 11000101 01100010 10110001 10101100 10111000")
        full = exact_partition_number(M)
        assert full.exhausted and full.nodes > 10
        res = exact_partition_number(M, limit=3)
        assert not res.exhausted and res.nodes == 3
        assert is_partition(M, res.witness)
        assert res.lower_bound <= full.value <= res.value


class TestSignedRank:
    def test_all_ones(self):
        assert exact_signed_rank(BoolMatrix.ones(2, 3)).value == 1

    def test_l_shape(self):
        assert brute_signed_rank(L_SHAPE.rows) == 2
        res = exact_signed_rank(L_SHAPE)
        assert res.value == 2 and res.exhausted and verify_decomposition(L_SHAPE, res.witness)

    def test_identity_2(self):
        assert brute_signed_rank(BoolMatrix.identity(2).rows) == 2
        assert exact_signed_rank(BoolMatrix.identity(2)).value == 2

    def test_zero(self):
        res = exact_signed_rank(BoolMatrix.zeros(1, 3))
        assert res.value == 0 and res.exhausted

    @pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, 3), (3, 2)])
    def test_matches_brute_force_small(self, m, n):
        for rows in all_bool_matrices(m, n):
            res = exact_signed_rank(BoolMatrix(rows))
            assert res.exhausted
            assert res.value == brute_signed_rank(rows)
            assert len(res.witness) == res.value
            assert verify_decomposition(BoolMatrix(rows), res.witness)

    def test_matches_brute_force_sampled_3x3(self):
        rng = random.Random(5)
        for _ in range(6):
            rows = [[rng.randint(0, 1) for _ in range(3)] for _ in range(3)]
            assert exact_signed_rank(BoolMatrix(rows)).value == brute_signed_rank(rows, max_t=3)

    def test_beats_constructive_when_possible(self):
        # searched instances where the constructive size exceeds the optimum
        rng = random.Random(1)
        seen = 0
        for _ in range(60):
            M = BoolMatrix([[rng.randint(0, 1) for _ in range(4)] for _ in range(4)])
            res = exact_signed_rank(M)
            d = signed_rectangle_decomposition(M)
            assert exact_rank(M) <= res.value <= len(d)
            if res.value < len(d):
                seen += 1
                assert verify_decomposition(M, res.witness) and len(res.witness) == res.value
        assert seen > 0

    def test_budget(self):
        M = text_matrix("00101 11100 10110 11001 00001")
        full = exact_signed_rank(M)
        assert full.exhausted and full.nodes > 5
        res = exact_signed_rank(M, limit=5)
        assert not res.exhausted
        assert res.lower_bound <= full.value <= res.value
        assert verify_decomposition(M, res.witness)


class TestMonochromatic:
    def test_all_ones(self):
        mono = max_monochromatic_rectangle(BoolMatrix.ones(2, 2))
        assert mono.value == 1 and mono.density == 1 and mono.rect.size == 4

    def test_identity_2(self):
        # nine rectangles; only single cells are monochromatic
        mono = max_monochromatic_rectangle(BoolMatrix.identity(2))
        assert mono.density == Fraction(1, 4)
        assert mono.value == 1 and mono.rect.key() == ((0,), (0,))

    def test_l_shape(self):
        mono = max_monochromatic_rectangle(L_SHAPE)
        assert mono.value == 1 and mono.density == Fraction(1, 2)
        assert all(L_SHAPE.rows[i][j] == 1 for i in mono.rect.rows for j in mono.rect.cols)

    def test_zero_matrix(self):
        mono = max_monochromatic_rectangle(BoolMatrix.zeros(2, 3))
        assert mono.value == 0 and mono.density == 1

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            max_monochromatic_rectangle(BoolMatrix.zeros(5, 5), cap=4)

    def test_matches_brute_force_rectangular(self):
        rng = random.Random(9)
        for _ in range(300):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            rows = [[int(rng.random() < 0.6) for _ in range(n)] for _ in range(m)]
            mono = max_monochromatic_rectangle(BoolMatrix(rows))
            size, value, r, c = brute_max_mono(rows)
            assert (mono.rect.size, mono.value, mono.rect.key()) == (size, value, (r, c))
            assert mono.density == Fraction(size, m * n)


@settings(max_examples=40, deadline=None)
@given(bool_matrices(max_m=4, max_n=4))
def test_sandwich_and_witnesses(M):
    ur = exact_signed_rank(M)
    p = exact_partition_number(M)
    assert ur.exhausted and p.exhausted
    assert exact_rank(M) <= ur.value <= p.value
    assert verify_decomposition(M, ur.witness)
    assert is_partition(M, p.witness)
    assert ur.value <= len(signed_rectangle_decomposition(M))


@settings(max_examples=30, deadline=None)
@given(bool_matrices(min_m=2, min_n=2, max_m=4, max_n=4))
def test_deleting_a_line_never_increases(M):
    base = (
        exact_signed_rank(M).value,
        exact_partition_number(M).value,
        max_monochromatic_rectangle(M).rect.size,
    )
    for smaller in [M.delete_row(i) for i in range(M.m)] + [M.delete_column(j) for j in range(M.n)]:
        assert exact_signed_rank(smaller).value <= base[0]
        assert exact_partition_number(smaller).value <= base[1]
        assert max_monochromatic_rectangle(smaller).rect.size <= base[2]
