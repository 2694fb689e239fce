"""Cross-intersecting set families and their matrix correspondence.

A pair of families ``S_1..S_m``, ``T_1..T_n`` over the universe
``{0..d-1}`` gives the intersection-size matrix ``|S_i & T_j|``, which is
the sum of the ``d`` element rectangles ``{i : k in S_i} x {j : k in T_j}``.
Read backwards, any list of rectangles is a family pair over a universe of
one element per rectangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    BoolMatrix,
    IntMatrix,
    Rectangle,
    SignedDecomposition,
    verify_decomposition,
)
from .errors import BoundsError, ValidationError
from .oracles import max_monochromatic_rectangle


@dataclass(frozen=True)
class SetFamilyPair:
    d: int
    S: tuple[frozenset[int], ...]
    T: tuple[frozenset[int], ...]

    def __post_init__(self):
        S = tuple(frozenset(x) for x in self.S)
        T = tuple(frozenset(x) for x in self.T)
        if self.d < 0:
            raise ValidationError("universe size must be nonnegative")
        if not S or not T:
            raise ValidationError("both families need at least one member")
        for member in S + T:
            if any(not 0 <= k < self.d for k in member):
                raise BoundsError(f"set {sorted(member)} leaves universe of size {self.d}")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)

    @property
    def m(self) -> int:
        return len(self.S)

    @property
    def n(self) -> int:
        return len(self.T)


def family_to_matrix(p: SetFamilyPair) -> IntMatrix:
    return IntMatrix(tuple(tuple(len(s & t) for t in p.T) for s in p.S))


def element_rectangles(p: SetFamilyPair) -> list[Optional[Rectangle]]:
    """Rectangle of each universe element; ``None`` where one side is empty."""
    out: list[Optional[Rectangle]] = []
    for k in range(p.d):
        rows = [i for i, s in enumerate(p.S) if k in s]
        cols = [j for j, t in enumerate(p.T) if k in t]
        out.append(Rectangle(rows, cols) if rows and cols else None)
    return out


def rectangles_to_family(
    rects: Sequence[Optional[Rectangle]], m: int, n: int
) -> SetFamilyPair:
    """One universe element per rectangle; ``None`` entries belong to no set."""
    S = [set() for _ in range(m)]
    T = [set() for _ in range(n)]
    for k, rect in enumerate(rects):
        if rect is None:
            continue
        rect.check_fits(m, n)
        for i in rect.rows:
            S[i].add(k)
        for j in rect.cols:
            T[j].add(k)
    return SetFamilyPair(len(rects), tuple(S), tuple(T))


def _gadget_rectangles(dec: SignedDecomposition) -> list[Optional[Rectangle]]:
    """Two nonnegative rectangles per term whose sum is ``J + sign * R``."""
    m, n = dec.m, dec.n
    everything_rows = frozenset(range(m))
    everything_cols = frozenset(range(n))
    out: list[Optional[Rectangle]] = []
    for term in dec:
        rows, cols = term.rect.rows, term.rect.cols
        if term.sign == 1:
            out.append(Rectangle(everything_rows, everything_cols))
            out.append(term.rect)
        else:
            outside = everything_rows - rows
            rest = everything_cols - cols
            out.append(Rectangle(outside, everything_cols) if outside else None)
            out.append(Rectangle(rows, rest) if rest else None)
    return out


def signed_to_cross_intersecting(
    M: BoolMatrix, dec: SignedDecomposition
) -> tuple[SetFamilyPair, int]:
    """Families over ``2u`` elements with ``|S_i & T_j| = M[i, j] + u``.

    ``u`` is the number of terms.  Term ``i`` (0-based) owns elements
    ``2i`` and ``2i + 1``.
    """
    if not verify_decomposition(M, dec):
        raise ValidationError("decomposition does not sum to the matrix")
    u = len(dec)
    return rectangles_to_family(_gadget_rectangles(dec), M.m, M.n), u


def check_cross_intersecting(p: SetFamilyPair, allowed: Iterable[int]) -> bool:
    allowed = frozenset(allowed)
    if not allowed:
        raise ValidationError("allowed intersection sizes must be nonempty")
    return all(len(s & t) in allowed for s in p.S for t in p.T)


def ab_to_boolean(Mab: IntMatrix, a: int, b: int) -> BoolMatrix:
    """The Boolean ``B`` with ``Mab = (b - a) B + a J``."""
    if not a < b:
        raise ValidationError(f"need a < b, got a={a}, b={b}")
    out = []
    for row in Mab.rows:
        for x in row:
            if x != a and x != b:
                raise ValidationError(f"entry {x} is neither {a} nor {b}")
        out.append(tuple(int(x == b) for x in row))
    return BoolMatrix(out)


@dataclass(frozen=True)
class MonochromaticSubfamilies:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    A: tuple[frozenset[int], ...]
    B: tuple[frozenset[int], ...]
    value: int
    density: Fraction


def best_monochromatic_subfamilies(
    p: SetFamilyPair, a: int, b: int
) -> MonochromaticSubfamilies:
    """Subfamilies ``A, B`` with one common intersection size and ``|A||B|`` largest."""
    B = ab_to_boolean(family_to_matrix(p), a, b)
    mono = max_monochromatic_rectangle(B)
    rows, cols = mono.rect.key()
    return MonochromaticSubfamilies(
        rows,
        cols,
        tuple(p.S[i] for i in rows),
        tuple(p.T[j] for j in cols),
        b if mono.value == 1 else a,
        mono.density,
    )


__all__ = [
    "MonochromaticSubfamilies",
    "SetFamilyPair",
    "ab_to_boolean",
    "best_monochromatic_subfamilies",
    "check_cross_intersecting",
    "element_rectangles",
    "family_to_matrix",
    "rectangles_to_family",
    "signed_to_cross_intersecting",
]
