"""Boolean tensors, slices, flattenings and signed primitive-tensor sums.

Coordinates are 0-based.  The recursion fixes one coordinate, picks a
maximal independent set of slices along it, writes every slice as a
{-1, 0, 1} combination of those, and recurses into each chosen slice until
order 2, where the matrix engine takes over.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_INDEPENDENCE_CAP, BoolMatrix, exact_rank
from .decompose import (
    column_coefficients,
    maximal_independent_columns,
    signed_rectangle_decomposition,
)
from .errors import BoundsError, ResourceLimitError, ValidationError

DEFAULT_MAX_ORDER = 4


class BoolTensor:
    """Order >= 2 array with entries in {0, 1}. Immutable."""

    __slots__ = ("_a",)

    def __init__(self, data):
        a = np.array(data, dtype=np.int64)
        if a.ndim < 2:
            raise ValidationError("a Boolean tensor needs order at least 2")
        if 0 in a.shape:
            raise ValidationError("tensor dimensions must be positive")
        if not np.isin(a, (0, 1)).all():
            raise ValidationError("tensor entries must be 0 or 1")
        a = a.astype(np.uint8)
        a.flags.writeable = False
        self._a = a

    @classmethod
    def from_flat(cls, dims, flat) -> "BoolTensor":
        return cls(np.asarray(list(flat)).reshape(tuple(dims)))

    @classmethod
    def from_matrix(cls, M: BoolMatrix) -> "BoolTensor":
        return cls(M.rows)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def dims(self) -> tuple[int, ...]:
        return self._a.shape

    @property
    def order(self) -> int:
        return self._a.ndim

    def __eq__(self, other) -> bool:
        return isinstance(other, BoolTensor) and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash((self.dims, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BoolTensor(dims={self.dims}, entries={self._a.ravel().tolist()})"

    def is_zero(self) -> bool:
        return not self._a.any()


@dataclass(frozen=True)
class PrimitiveTensor:
    """All-ones on ``sets[0] x ... x sets[l-1]``, zero elsewhere."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        if any(not s for s in sets):
            raise ValidationError("primitive tensor needs nonempty sets on every coordinate")
        object.__setattr__(self, "sets", sets)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(s)) for s in self.sets)


@dataclass(frozen=True)
class TensorTerm:
    sign: int
    prim: PrimitiveTensor

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValidationError(f"sign must be +1 or -1, got {self.sign!r}")


@dataclass(frozen=True)
class SignedTensorDecomposition:
    dims: tuple[int, ...]
    terms: tuple[TensorTerm, ...] = ()

    def __post_init__(self):
        dims = tuple(self.dims)
        terms = tuple(self.terms)
        for t in terms:
            if len(t.prim.sets) != len(dims):
                raise ValidationError("term order does not match tensor order")
            for s, d in zip(t.prim.sets, dims):
                if max(s) >= d or min(s) < 0:
                    raise BoundsError(f"term {t.prim.key()} does not fit dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return len(self.terms)


def _check_coord(T: BoolTensor, lam: int) -> None:
    if not 0 <= lam < T.order:
        raise BoundsError(f"coordinate {lam} out of range for order {T.order}")


def tensor_slice(T: BoolTensor, lam: int, v: int):
    """Fix coordinate ``lam`` to ``v``.

    Order 2 input returns a single-column :class:`BoolMatrix`.
    """
    _check_coord(T, lam)
    if not 0 <= v < T.dims[lam]:
        raise BoundsError(f"value {v} out of range for coordinate {lam}")
    sub = np.take(T.array, v, axis=lam)
    if sub.ndim == 1:
        return BoolMatrix(tuple((int(x),) for x in sub))
    return BoolTensor(sub)


def flatten(T: BoolTensor, lam: int) -> BoolMatrix:
    """Matrix with one column per value of coordinate ``lam``.

    Column ``v`` is the row-major vectorization of the slice at ``v`` over
    the remaining coordinates in ascending order.
    """
    _check_coord(T, lam)
    a = np.moveaxis(T.array, lam, -1).reshape(-1, T.dims[lam])
    return BoolMatrix(a.tolist())


def flattening_rank(T: BoolTensor) -> int:
    return max(exact_rank(flatten(T, lam)) for lam in range(T.order))


def maximal_independent_slices(
    T: BoolTensor, lam: int, cap: int = DEFAULT_INDEPENDENCE_CAP
) -> tuple[int, ...]:
    return maximal_independent_columns(flatten(T, lam), cap=cap).columns


def tensor_signed_decomposition(
    T: BoolTensor,
    lam: int | None = None,
    cap: int = DEFAULT_INDEPENDENCE_CAP,
    max_order: int = DEFAULT_MAX_ORDER,
) -> SignedTensorDecomposition:
    """Signed sum of primitive tensors reproducing ``T``.

    ``lam`` picks the coordinate split off at the top level (default: the
    last).  Deeper levels always split their last coordinate.
    """
    if T.order > max_order:
        raise ResourceLimitError(f"tensor order {T.order} exceeds cap {max_order}")
    if lam is None:
        lam = T.order - 1
    _check_coord(T, lam)
    return SignedTensorDecomposition(T.dims, tuple(_decompose(T, lam, cap)))


def _decompose(T: BoolTensor, lam: int, cap: int) -> list[TensorTerm]:
    if T.order == 2:
        M = BoolMatrix(T.array.tolist())
        if lam == 1:
            dec = signed_rectangle_decomposition(M, cap=cap)
            return [TensorTerm(t.sign, PrimitiveTensor((t.rect.rows, t.rect.cols))) for t in dec]
        dec = signed_rectangle_decomposition(M.transpose(), cap=cap)
        return [TensorTerm(t.sign, PrimitiveTensor((t.rect.cols, t.rect.rows))) for t in dec]

    flat = flatten(T, lam)
    basis = maximal_independent_columns(flat, cap=cap)
    coeffs = column_coefficients(flat, basis)
    terms: list[TensorTerm] = []
    for s in basis.columns:
        pos = frozenset(v for v in range(flat.n) if coeffs[v][s] == 1)
        neg = frozenset(v for v in range(flat.n) if coeffs[v][s] == -1)
        sub = tensor_slice(T, lam, s)
        inner = _decompose(sub, sub.order - 1, cap)
        for side, factor in ((pos, 1), (neg, -1)):
            if not side:
                continue
            for t in inner:
                sets = t.prim.sets[:lam] + (side,) + t.prim.sets[lam:]
                terms.append(TensorTerm(t.sign * factor, PrimitiveTensor(sets)))
    return terms


def evaluate_tensor_decomposition(d: SignedTensorDecomposition) -> np.ndarray:
    """Entrywise signed sum as an integer array of shape ``d.dims``."""
    acc = np.zeros(d.dims, dtype=np.int64)
    for t in d.terms:
        acc[np.ix_(*[sorted(s) for s in t.prim.sets])] += t.sign
    return acc


def verify_tensor_decomposition(T: BoolTensor, d: SignedTensorDecomposition) -> bool:
    if tuple(T.dims) != tuple(d.dims):
        return False
    return bool(np.array_equal(evaluate_tensor_decomposition(d), T.array))


__all__ = [
    "DEFAULT_MAX_ORDER",
    "BoolTensor",
    "PrimitiveTensor",
    "SignedTensorDecomposition",
    "TensorTerm",
    "evaluate_tensor_decomposition",
    "flatten",
    "flattening_rank",
    "maximal_independent_slices",
    "tensor_signed_decomposition",
    "tensor_slice",
    "verify_tensor_decomposition",
]
