"""Signed rectangle decomposition through a maximal independent column set.

A column set is independent when all of its subsets have distinct column
sums.  Once a set ``S`` is maximal, every other column ``c`` collides with
some subset sum, which yields ``c = sum(A) - sum(B')`` for disjoint
``A, B'`` inside ``S``.  Splitting those {-1, 0, 1} coefficients by sign
gives at most two rectangles per member of ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    DEFAULT_INDEPENDENCE_CAP,
    BoolMatrix,
    Rectangle,
    SignedDecomposition,
    SignedTerm,
    packed_columns,
)
from .errors import BoundsError, MaximalityError, ResourceLimitError, ValidationError

CoefficientVector = dict  # dict[int, int]: column of S -> coefficient in {-1, 0, 1}


@dataclass(frozen=True)
class IndependentSet:
    columns: tuple[int, ...]
    m: int
    n: int

    def __len__(self) -> int:
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    def __contains__(self, j: int) -> bool:
        return j in self.columns


def _width(M: BoolMatrix) -> int:
    # a column sum never exceeds n
    return M.n.bit_length()


def _check_order(M: BoolMatrix, order: Sequence[int] | None) -> list[int]:
    if order is None:
        return list(range(M.n))
    order = list(order)
    if sorted(order) != list(range(M.n)):
        raise ValidationError(f"column order must be a permutation of 0..{M.n - 1}")
    return order


def maximal_independent_columns(
    M: BoolMatrix,
    order: Sequence[int] | None = None,
    cap: int = DEFAULT_INDEPENDENCE_CAP,
) -> IndependentSet:
    """Greedy maximal independent column set, scanning columns in ``order``.

    Adding ``c`` to an independent ``S`` keeps it independent iff no subset
    sum of ``S`` plus ``c`` equals another subset sum of ``S``, so one set of
    packed subset sums is grown incrementally.  A single pass suffices: a
    column rejected early stays rejected because supersets of a dependent
    set are dependent.
    """
    packed = packed_columns(M, _width(M))
    chosen: list[int] = []
    sums = {0}
    for c in _check_order(M, order):
        p = packed[c]
        shifted = {x + p for x in sums}
        if shifted & sums:
            continue
        if len(chosen) == cap:
            raise ResourceLimitError(
                f"independent column set would exceed cap {cap}; raise the cap to continue"
            )
        chosen.append(c)
        sums |= shifted
    return IndependentSet(tuple(chosen), M.m, M.n)


class _SubsetSums:
    """Packed column sums of every subset of ``S``, indexed by bitmask."""

    def __init__(self, M: BoolMatrix, basis: Sequence[int]):
        self.basis = tuple(basis)
        self.packed = packed_columns(M, _width(M))
        sums = [0]
        for j in self.basis:
            p = self.packed[j]
            sums += [x + p for x in sums]
        self.sums = sums
        self.index = {v: mask for mask, v in enumerate(sums)}
        if len(self.index) != len(sums):
            raise ValidationError("column set is not independent")

    def members(self, mask: int) -> frozenset[int]:
        return frozenset(j for b, j in enumerate(self.basis) if (mask >> b) & 1)

    def collision(self, c: int) -> tuple[frozenset[int], frozenset[int]]:
        """First ``(A, B')`` in increasing ``B'`` mask order with sum(A) = sum(B') + c."""
        p = self.packed[c]
        for bmask, s in enumerate(self.sums):
            amask = self.index.get(s + p)
            if amask is not None:
                common = amask & bmask
                return self.members(amask & ~common), self.members(bmask & ~common)
        raise MaximalityError(
            f"column {c} has no equal-sum partner; the column set is not maximal"
        )


def _check_column(M: BoolMatrix, c: int) -> None:
    if not 0 <= c < M.n:
        raise BoundsError(f"column {c} out of range for {M.n} columns")


def find_equal_sum_subsets(
    M: BoolMatrix, s: IndependentSet, c: int
) -> tuple[frozenset[int], frozenset[int]]:
    """Disjoint ``A, B`` of ``S + {c}`` with equal column sums and ``c`` in ``B``."""
    _check_column(M, c)
    if c in s:
        raise ValidationError(f"column {c} already belongs to the independent set")
    a, b_rest = _SubsetSums(M, s.columns).collision(c)
    return a, b_rest | {c}


def _coefficients(table: _SubsetSums, M: BoolMatrix, c: int, by_column: dict) -> CoefficientVector:
    coeffs = dict.fromkeys(table.basis, 0)
    if c in coeffs:
        coeffs[c] = 1
        return coeffs
    twin = by_column.get(M.column(c))
    if twin is not None:
        coeffs[twin] = 1
        return coeffs
    a, b_rest = table.collision(c)
    for j in a:
        coeffs[j] = 1
    for j in b_rest:
        coeffs[j] = -1
    return coeffs


def _column_lookup(M: BoolMatrix, basis: Iterable[int]) -> dict:
    return {M.column(j): j for j in basis}


def express_column(M: BoolMatrix, s: IndependentSet, c: int) -> CoefficientVector:
    """Coefficients in {-1, 0, 1} over ``S`` whose combination equals column ``c``."""
    _check_column(M, c)
    table = _SubsetSums(M, s.columns)
    return _coefficients(table, M, c, _column_lookup(M, s.columns))


def column_coefficients(M: BoolMatrix, s: IndependentSet) -> list[CoefficientVector]:
    """Coefficient vector of every column of ``M`` with respect to ``S``."""
    table = _SubsetSums(M, s.columns)
    lookup = _column_lookup(M, s.columns)
    return [_coefficients(table, M, c, lookup) for c in range(M.n)]


def signed_rectangle_decomposition(
    M: BoolMatrix,
    order: Sequence[int] | None = None,
    cap: int = DEFAULT_INDEPENDENCE_CAP,
    basis: IndependentSet | None = None,
) -> SignedDecomposition:
    """Write ``M`` as a signed sum of at most ``2|S|`` rectangles.

    For each ``c`` in ``S`` (in selection order) emit ``+supp(c) x P_c`` and
    then ``-supp(c) x N_c``, where ``P_c``/``N_c`` are the columns whose
    coefficient on ``c`` is +1/-1.  Empty sides are dropped.
    """
    if basis is None:
        basis = maximal_independent_columns(M, order, cap)
    coeffs = column_coefficients(M, basis)
    terms = []
    for c in basis.columns:
        support = frozenset(i for i in range(M.m) if M.rows[i][c])
        if not support:
            continue
        pos = frozenset(y for y in range(M.n) if coeffs[y][c] == 1)
        neg = frozenset(y for y in range(M.n) if coeffs[y][c] == -1)
        if pos:
            terms.append(SignedTerm(1, Rectangle(support, pos)))
        if neg:
            terms.append(SignedTerm(-1, Rectangle(support, neg)))
    return SignedDecomposition(M.m, M.n, tuple(terms))


def independent_set_bound_check(size: int, r: int) -> bool:
    """``2**size <= (size + 1)**r`` in exact integer arithmetic."""
    if size < 0 or r < 0:
        raise ValueError("size and rank must be nonnegative")
    return 2**size <= (size + 1) ** r


def max_independent_size(r: int) -> int:
    """Largest ``s`` with ``2**s <= (s + 1)**r``.

    ``s - r*log2(s + 1)`` is convex, so the admissible ``s`` form an interval
    starting at 0.
    """
    s = 0
    while independent_set_bound_check(s + 1, r):
        s += 1
    return s


__all__ = [
    "CoefficientVector",
    "IndependentSet",
    "column_coefficients",
    "express_column",
    "find_equal_sum_subsets",
    "independent_set_bound_check",
    "max_independent_size",
    "maximal_independent_columns",
    "signed_rectangle_decomposition",
]
