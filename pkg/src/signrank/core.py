"""Boolean matrices, rectangles, signed decompositions and column sums.

All Python-level indices are 0-based.  The text and JSON formats in
:mod:`signrank.formats` translate to and from 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import BoundsError, DimensionError, ResourceLimitError, ValidationError

#: Default largest column set for which independence is decided.
DEFAULT_INDEPENDENCE_CAP = 24

ColumnSum = tuple  # tuple[int, ...], one entry per row


def _as_int_rows(rows: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if not out or not out[0]:
        raise ValidationError("matrix must have at least one row and one column")
    width = len(out[0])
    if any(len(row) != width for row in out):
        raise ValidationError("ragged matrix rows")
    return out


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", _as_int_rows(self.rows))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(m)))


@dataclass(frozen=True)
class BoolMatrix(IntMatrix):
    """Dense 0/1 matrix.

    Rows are also available as bitmasks (bit ``j`` of ``row_masks[i]`` is
    entry ``(i, j)``), which the search routines use internally.
    """

    def __post_init__(self):
        super().__post_init__()
        for row in self.rows:
            for x in row:
                if x not in (0, 1):
                    raise ValidationError(f"Boolean matrix entry {x!r} is not 0 or 1")

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j, x in enumerate(row) if x) for row in self.rows)

    @cached_property
    def col_masks(self) -> tuple[int, ...]:
        return tuple(
            sum(1 << i for i in range(self.m) if self.rows[i][j]) for j in range(self.n)
        )

    def transpose(self) -> "BoolMatrix":
        return BoolMatrix(tuple(zip(*self.rows)))

    def is_zero(self) -> bool:
        return not any(self.row_masks)

    def ones_count(self) -> int:
        return sum(bin(r).count("1") for r in self.row_masks)

    def delete_row(self, i: int) -> "BoolMatrix":
        return BoolMatrix(self.rows[:i] + self.rows[i + 1:])

    def delete_column(self, j: int) -> "BoolMatrix":
        return BoolMatrix(tuple(row[:j] + row[j + 1:] for row in self.rows))

    @classmethod
    def from_masks(cls, masks: Sequence[int], n: int) -> "BoolMatrix":
        return cls(tuple(tuple((r >> j) & 1 for j in range(n)) for r in masks))

    @classmethod
    def zeros(cls, m: int, n: int) -> "BoolMatrix":
        return cls(tuple((0,) * n for _ in range(m)))

    @classmethod
    def ones(cls, m: int, n: int) -> "BoolMatrix":
        return cls(tuple((1,) * n for _ in range(m)))

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class Rectangle:
    """A primitive matrix: all-ones on ``rows x cols`` and zero elsewhere."""

    rows: frozenset[int]
    cols: frozenset[int]

    def __post_init__(self):
        rows, cols = frozenset(self.rows), frozenset(self.cols)
        if not rows or not cols:
            raise ValidationError("rectangle needs a nonempty row set and column set")
        if min(rows) < 0 or min(cols) < 0:
            raise BoundsError("negative rectangle index")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.rows)), tuple(sorted(self.cols))

    def __lt__(self, other: "Rectangle") -> bool:
        return self.key() < other.key()

    @property
    def size(self) -> int:
        return len(self.rows) * len(self.cols)

    def fits(self, m: int, n: int) -> bool:
        return max(self.rows) < m and max(self.cols) < n

    def check_fits(self, m: int, n: int) -> None:
        if not self.fits(m, n):
            raise BoundsError(f"rectangle {self.key()} does not fit in {m}x{n}")

    def __contains__(self, ij: tuple[int, int]) -> bool:
        return ij[0] in self.rows and ij[1] in self.cols


@dataclass(frozen=True)
class SignedTerm:
    sign: int
    rect: Rectangle

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValidationError(f"sign must be +1 or -1, got {self.sign!r}")


@dataclass(frozen=True)
class SignedDecomposition:
    """Ordered signed sum of rectangles inside an ``m x n`` frame."""

    m: int
    n: int
    terms: tuple[SignedTerm, ...] = field(default=())

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValidationError("decomposition dimensions must be positive")
        terms = tuple(self.terms)
        for t in terms:
            t.rect.check_fits(self.m, self.n)
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "SignedDecomposition") -> "SignedDecomposition":
        if (self.m, self.n) != (other.m, other.n):
            raise DimensionError("cannot concatenate decompositions of different shape")
        return SignedDecomposition(self.m, self.n, self.terms + other.terms)

    @classmethod
    def from_pairs(cls, m: int, n: int, pairs) -> "SignedDecomposition":
        """Build from ``(sign, rows, cols)`` triples."""
        return cls(m, n, tuple(SignedTerm(s, Rectangle(r, c)) for s, r, c in pairs))


def rect_to_matrix(rect: Rectangle, m: int, n: int) -> BoolMatrix:
    rect.check_fits(m, n)
    return BoolMatrix(
        tuple(tuple(int(i in rect.rows and j in rect.cols) for j in range(n)) for i in range(m))
    )


def evaluate_decomposition(d: SignedDecomposition) -> IntMatrix:
    """Entrywise signed sum of the decomposition's rectangles."""
    acc = [[0] * d.n for _ in range(d.m)]
    for term in d.terms:
        cols = term.rect.cols
        for i in term.rect.rows:
            row = acc[i]
            for j in cols:
                row[j] += term.sign
    return IntMatrix(acc)


def verify_decomposition(M: IntMatrix, d: SignedDecomposition) -> bool:
    if M.shape != (d.m, d.n):
        raise DimensionError(f"matrix is {M.m}x{M.n} but decomposition is {d.m}x{d.n}")
    return evaluate_decomposition(d).rows == M.rows


def exact_rank(M) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Accepts a :class:`IntMatrix` or any sequence of integer rows.
    """
    rows = M.rows if isinstance(M, IntMatrix) else M
    a = [list(r) for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(n):
        if rank == m:
            break
        p = next((i for i in range(rank, m) if a[i][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        piv_row = a[rank]
        piv = piv_row[c]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[c]
            for j in range(c + 1, n):
                row[j] = (piv * row[j] - f * piv_row[j]) // prev
            row[c] = 0
        prev = piv
        rank += 1
    return rank


def _check_columns(M: IntMatrix, cols: Iterable[int]) -> list[int]:
    cols = list(cols)
    for j in cols:
        if not 0 <= j < M.n:
            raise BoundsError(f"column {j} out of range for {M.n} columns")
    return cols


def column_sum(M: IntMatrix, cols: Iterable[int]) -> ColumnSum:
    """Entrywise sum of the selected columns (zero vector for no columns)."""
    cols = _check_columns(M, cols)
    return tuple(sum(row[j] for j in cols) for row in M.rows)


def packed_columns(M: BoolMatrix, width: int) -> list[int]:
    """Encode each column as an integer with ``width`` bits per row.

    Adding packed columns adds column sums digitwise, provided no row sum
    reaches ``2**width``.
    """
    return [
        sum(M.rows[i][j] << (i * width) for i in range(M.m)) for j in range(M.n)
    ]


def _balanced_packed(M: BoolMatrix, cols: list[int], base: int) -> list[int]:
    return [sum(M.rows[i][j] * base**i for i in range(M.m)) for j in cols]


def is_independent(
    M: BoolMatrix,
    cols: Iterable[int],
    cap: int = DEFAULT_INDEPENDENCE_CAP,
    method: str = "enumerate",
) -> bool:
    """True iff all subsets of ``cols`` have pairwise distinct column sums.

    ``method="enumerate"`` hashes all ``2**k`` subset sums.  ``method="mitm"``
    instead looks for a nonzero {-1, 0, 1} combination summing to zero by
    meeting two half-enumerations of size ``3**(k/2)`` in the middle.
    """
    cols = _check_columns(M, cols)
    k = len(cols)
    if k > cap:
        raise ResourceLimitError(f"independence check on {k} columns exceeds cap {cap}")
    if method == "enumerate":
        width = max(k, 1).bit_length()
        packed = packed_columns(M, width)
        sums = {0}
        for j in cols:
            p = packed[j]
            shifted = {x + p for x in sums}
            if shifted & sums:
                return False
            sums |= shifted
        return True
    if method == "mitm":
        return _independent_mitm(M, cols)
    raise ValueError(f"unknown independence method {method!r}")


def _independent_mitm(M: BoolMatrix, cols: list[int]) -> bool:
    k = len(cols)
    # digits of any combined sum lie in [-k, k]; base 2k+1 keeps packing injective
    base = 2 * k + 1
    packed = _balanced_packed(M, cols, base)
    half = k // 2
    left, right = packed[:half], packed[half:]

    def signed_sums(vecs):
        zero_hit = False
        values = set()
        for coeffs in product((0, 1, -1), repeat=len(vecs)):
            v = sum(c * x for c, x in zip(coeffs, vecs))
            if any(coeffs):
                if v == 0:
                    zero_hit = True
                values.add(v)
        return zero_hit, values

    lz, lvals = signed_sums(left)
    if lz:
        return False
    rz, rvals = signed_sums(right)
    if rz:
        return False
    return not any(-v in rvals for v in lvals)


__all__ = [
    "DEFAULT_INDEPENDENCE_CAP",
    "BoolMatrix",
    "ColumnSum",
    "IntMatrix",
    "Rectangle",
    "SignedDecomposition",
    "SignedTerm",
    "column_sum",
    "evaluate_decomposition",
    "exact_rank",
    "is_independent",
    "packed_columns",
    "rect_to_matrix",
    "verify_decomposition",
]
