"""Exact brute-force values for small matrices.

* partitioning number: branch and bound over rectangles covering the first
  uncovered 1-cell,
* signed rectangle rank: iterative deepening over a residual matrix with a
  rank-based prune,
* largest monochromatic rectangle: subset enumeration over the shorter side.

Search budgets count visited nodes so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    BoolMatrix,
    Rectangle,
    SignedDecomposition,
    SignedTerm,
    exact_rank,
)
from .decompose import signed_rectangle_decomposition
from .errors import ResourceLimitError

#: Largest shorter side accepted by :func:`max_monochromatic_rectangle`.
DEFAULT_MONO_CAP = 20


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an exact search.

    When ``exhausted`` is true, ``value`` is the optimum and ``witness``
    attains it.  Otherwise ``value`` and ``witness`` are the best upper bound
    found and ``lower_bound`` is what the search managed to prove.
    """

    value: int
    witness: SignedDecomposition
    exhausted: bool
    lower_bound: int
    nodes: int


class _BudgetExceeded(Exception):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _submasks(mask: int):
    """All submasks of ``mask``, largest first."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _masks_rank(masks: list[int], n: int) -> int:
    return exact_rank([[(r >> j) & 1 for j in range(n)] for r in masks if r])


def _row_pattern_cover(M: BoolMatrix) -> list[Rectangle]:
    """Partition obtained by grouping identical nonzero rows (or columns)."""

    def group(masks):
        groups: dict[int, list[int]] = {}
        for i, r in enumerate(masks):
            if r:
                groups.setdefault(r, []).append(i)
        return groups

    by_row = group(M.row_masks)
    by_col = group(M.col_masks)
    if len(by_col) < len(by_row):
        return [Rectangle(_bits(mask), idx) for mask, idx in by_col.items()]
    return [Rectangle(idx, _bits(mask)) for mask, idx in by_row.items()]


def _largest_one_rectangle(M: BoolMatrix) -> int:
    if M.is_zero():
        return 0
    mono = max_monochromatic_rectangle(M, value=1)
    return mono.rect.size


def exact_partition_number(M: BoolMatrix, limit: int | None = None) -> OracleResult:
    """Minimum number of disjoint all-ones rectangles covering the 1-cells.

    Branches on the first uncovered 1-cell in row-major order over every
    all-ones rectangle of uncovered cells that contains it, largest first.
    A node is pruned when ``count + max(rank(rest), ceil(|rest| / big))``
    reaches the incumbent, where ``big`` is the largest all-ones rectangle
    of ``M``.
    """
    m, n = M.m, M.n
    if M.is_zero():
        return OracleResult(0, SignedDecomposition(m, n), True, 0, 0)

    big = _largest_one_rectangle(M)
    total = M.ones_count()
    root_lb = max(exact_rank(M), -(-total // big))
    best = _row_pattern_cover(M)
    nodes = 0
    if len(best) <= root_lb:
        return OracleResult(len(best), _as_partition(M, best), True, len(best), nodes)

    chosen: list[Rectangle] = []

    def lower_bound(U: list[int]) -> int:
        remaining = sum(_popcount(r) for r in U)
        if remaining == 0:
            return 0
        lb = -(-remaining // big)
        if len(chosen) + lb >= len(best):
            return lb
        return max(lb, _masks_rank(U, n))

    def candidates(U: list[int], i: int, j: int):
        jbit = 1 << j
        below = [r for r in range(i + 1, m) if U[r] & jbit]
        out = []
        for sel in range(1 << len(below)):
            rows = [i] + [below[b] for b in range(len(below)) if (sel >> b) & 1]
            cols = U[i]
            for r in rows[1:]:
                cols &= U[r]
            free = cols & ~jbit
            for sub in _submasks(free):
                cmask = sub | jbit
                out.append((len(rows) * _popcount(cmask), rows, cmask))
        out.sort(key=lambda t: (-t[0], t[1], t[2]))
        return out

    def search(U: list[int]):
        nonlocal nodes, best
        nodes += 1
        if limit is not None and nodes > limit:
            raise _BudgetExceeded
        i = next((r for r in range(m) if U[r]), None)
        if i is None:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower_bound(U) >= len(best):
            return
        j = (U[i] & -U[i]).bit_length() - 1
        for _, rows, cmask in candidates(U, i, j):
            V = list(U)
            for r in rows:
                V[r] &= ~cmask
            chosen.append(Rectangle(rows, _bits(cmask)))
            search(V)
            chosen.pop()
            if len(best) <= root_lb:
                return

    try:
        search(list(M.row_masks))
        exhausted = True
    except _BudgetExceeded:
        exhausted = False
        nodes = limit
    value = len(best)
    return OracleResult(
        value, _as_partition(M, best), exhausted, value if exhausted else root_lb, nodes
    )


def _as_partition(M: BoolMatrix, rects: list[Rectangle]) -> SignedDecomposition:
    return SignedDecomposition(M.m, M.n, tuple(SignedTerm(1, r) for r in rects))


def _all_signed_rectangles(m: int, n: int) -> list[tuple[int, int, int]]:
    """``(sign, rowmask, colmask)`` in a fixed canonical order."""
    out = []
    for rmask in range(1, 1 << m):
        for cmask in range(1, 1 << n):
            out.append((1, rmask, cmask))
            out.append((-1, rmask, cmask))
    return out


def _as_signed_rectangle(res: list[list[int]]) -> tuple[int, int, int] | None:
    """``(sign, rowmask, colmask)`` if ``res`` is +-1 times a rectangle."""
    sign = 0
    rmask = cmask = 0
    for i, row in enumerate(res):
        rowcols = 0
        for j, x in enumerate(row):
            if x:
                if x not in (1, -1) or (sign and x != sign):
                    return None
                sign = x
                rowcols |= 1 << j
        if rowcols:
            if cmask and rowcols != cmask:
                return None
            cmask = rowcols
            rmask |= 1 << i
    if not sign:
        return None
    return sign, rmask, cmask


def exact_signed_rank(M: BoolMatrix, limit: int | None = None) -> OracleResult:
    """Minimum ``t`` with ``M`` a signed sum of ``t`` rectangles.

    Iterative deepening on ``t`` from ``rank(M)`` up to (excluding) the size
    of the constructive decomposition, which serves as the incumbent.  Terms
    are chosen in non-decreasing canonical order, a rectangle never appears
    with both signs, and a residual whose rank or largest absolute entry
    exceeds the number of remaining terms is abandoned.  With one term left
    the residual is matched directly.
    """
    m, n = M.m, M.n
    r = exact_rank(M)
    if r == 0:
        return OracleResult(0, SignedDecomposition(m, n), True, 0, 0)
    incumbent = signed_rectangle_decomposition(M)
    ub = len(incumbent)
    if ub == r:
        return OracleResult(ub, incumbent, True, ub, 0)

    cands = _all_signed_rectangles(m, n)
    nodes = 0
    res = [list(row) for row in M.rows]
    stack: list[tuple[int, int, int]] = []
    used: dict[tuple[int, int], tuple[int, int]] = {}

    def apply(sign: int, rmask: int, cmask: int, factor: int) -> None:
        delta = sign * factor
        cols = _bits(cmask)
        for i in _bits(rmask):
            row = res[i]
            for j in cols:
                row[j] -= delta

    def search(t: int, start: int) -> bool:
        nonlocal nodes
        nodes += 1
        if limit is not None and nodes > limit:
            raise _BudgetExceeded
        left = t - len(stack)
        peak = max(abs(x) for row in res for x in row)
        if peak == 0:
            return True
        if left == 0 or peak > left:
            return False
        if left == 1:
            hit = _as_signed_rectangle(res)
            if hit is None:
                return False
            stack.append(hit)
            return True
        if exact_rank(res) > left:
            return False
        for idx in range(start, len(cands)):
            sign, rmask, cmask = cands[idx]
            key = (rmask, cmask)
            prev = used.get(key)
            if prev is not None and prev[0] != sign:
                continue
            apply(sign, rmask, cmask, 1)
            stack.append(cands[idx])
            used[key] = (sign, prev[1] + 1 if prev else 1)
            if search(t, idx):
                return True
            stack.pop()
            if prev is None:
                del used[key]
            else:
                used[key] = prev
            apply(sign, rmask, cmask, -1)
        return False

    refuted = r - 1
    try:
        for t in range(r, ub):
            if search(t, 0):
                terms = tuple(
                    SignedTerm(s, Rectangle(_bits(rm), _bits(cm))) for s, rm, cm in stack
                )
                return OracleResult(t, SignedDecomposition(m, n, terms), True, t, nodes)
            refuted = t
    except _BudgetExceeded:
        return OracleResult(ub, incumbent, False, refuted + 1, limit)
    return OracleResult(ub, incumbent, True, ub, nodes)


@dataclass(frozen=True)
class MonoRectangle:
    rect: Rectangle
    value: int
    density: Fraction


def _best_line_sets(lines: list[int], width: int, best: int, found: list):
    """Maximum ``|X| * |AND(X)|`` over nonempty line subsets ``X``.

    Appends every ``(X, AND(X))`` reaching the running maximum to ``found``
    and returns the maximum.  Ties are kept; strictly worse branches pruned.
    """
    k = len(lines)
    full = (1 << width) - 1

    def dfs(start: int, chosen: list[int], mask: int):
        nonlocal best
        if chosen:
            size = len(chosen) * _popcount(mask)
            if size > best:
                best = size
                found.clear()
            if size == best:
                found.append((tuple(chosen), mask))
        for idx in range(start, k):
            new = mask & lines[idx]
            if not new:
                continue
            if (len(chosen) + k - idx) * _popcount(new) < best:
                continue
            chosen.append(idx)
            dfs(idx + 1, chosen, new)
            chosen.pop()

    dfs(0, [], full)
    return best


def max_monochromatic_rectangle(
    M: BoolMatrix, value: int | None = None, cap: int = DEFAULT_MONO_CAP
) -> MonoRectangle:
    """Largest rectangle of ``M`` whose cells all hold one value.

    Subsets of the shorter side are enumerated (columns when ``n <= m``) and
    each is closed to the full set of lines agreeing with it.  Ties go to
    value 1, then the smaller sorted row tuple, then the smaller column
    tuple.  ``value`` restricts the search to one color.
    """
    m, n = M.m, M.n
    if min(m, n) > cap:
        raise ResourceLimitError(f"shorter side {min(m, n)} exceeds monochromatic cap {cap}")
    by_cols = n <= m
    lines = list(M.col_masks if by_cols else M.row_masks)
    width = m if by_cols else n
    full = (1 << width) - 1
    colors = (1, 0) if value is None else (value,)

    best = 0
    found: list[tuple[int, tuple, int]] = []
    for color in colors:
        shaded = lines if color == 1 else [full & ~x for x in lines]
        hits: list = []
        top = _best_line_sets(shaded, width, best, hits)
        if top > best:
            best, found = top, []
        if top == best:
            found.extend((color, chosen, mask) for chosen, mask in hits)
    if not found:
        raise ValueError(f"matrix has no cell with value {value}")

    def to_rect(color, chosen, mask):
        other = _bits(mask)
        if by_cols:
            return Rectangle(other, chosen)
        return Rectangle(chosen, other)

    scored = [(-color, to_rect(color, chosen, mask).key(), color) for color, chosen, mask in found]
    _, (rows, cols), color = min(scored)
    return MonoRectangle(
        Rectangle(rows, cols), color, Fraction(len(rows) * len(cols), m * n)
    )


__all__ = [
    "DEFAULT_MONO_CAP",
    "MonoRectangle",
    "OracleResult",
    "exact_partition_number",
    "exact_signed_rank",
    "max_monochromatic_rectangle",
]
