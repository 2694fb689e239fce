"""Text and JSON formats.  Every index on the wire is 1-based."""

from __future__ import annotations

import json
from fractions import Fraction

from .core import BoolMatrix, Rectangle, SignedDecomposition, SignedTerm
from .errors import ValidationError
from .setsys import SetFamilyPair
from .tensor import BoolTensor, PrimitiveTensor, SignedTensorDecomposition, TensorTerm


def parse_matrix_text(text: str) -> BoolMatrix:
    """One row per line of '0'/'1' characters; blank and '#' lines skipped."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if set(line) - {"0", "1"}:
            raise ValidationError(f"line {lineno}: only '0' and '1' allowed, got {line!r}")
        rows.append(tuple(int(ch) for ch in line))
    if not rows:
        raise ValidationError("no matrix rows found")
    return BoolMatrix(rows)


def format_matrix_text(M) -> str:
    return "".join("".join(str(x) for x in row) + "\n" for row in M.rows)


def matrix_from_json(obj) -> BoolMatrix:
    """Accept ``[[0,1],...]`` or ``{"rows": [[...], ...]}``."""
    if isinstance(obj, dict):
        if "rows" not in obj:
            raise ValidationError('matrix JSON object needs a "rows" key')
        obj = obj["rows"]
    return BoolMatrix(obj)


def _rect_json(rect: Rectangle) -> tuple[list[int], list[int]]:
    rows, cols = rect.key()
    return [i + 1 for i in rows], [j + 1 for j in cols]


def decomposition_to_json(d: SignedDecomposition) -> dict:
    terms = []
    for t in d.terms:
        rows, cols = _rect_json(t.rect)
        terms.append({"sign": t.sign, "rows": rows, "cols": cols})
    return {"m": d.m, "n": d.n, "terms": terms}


def decomposition_from_json(obj: dict) -> SignedDecomposition:
    try:
        terms = tuple(
            SignedTerm(
                int(t["sign"]),
                Rectangle([i - 1 for i in t["rows"]], [j - 1 for j in t["cols"]]),
            )
            for t in obj["terms"]
        )
        return SignedDecomposition(int(obj["m"]), int(obj["n"]), terms)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed decomposition JSON: {exc}") from exc


def family_to_json(p: SetFamilyPair) -> dict:
    return {
        "d": p.d,
        "S": [sorted(k + 1 for k in s) for s in p.S],
        "T": [sorted(k + 1 for k in t) for t in p.T],
    }


def family_from_json(obj: dict) -> SetFamilyPair:
    try:
        return SetFamilyPair(
            int(obj["d"]),
            tuple(frozenset(k - 1 for k in s) for s in obj["S"]),
            tuple(frozenset(k - 1 for k in t) for t in obj["T"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed family JSON: {exc}") from exc


def parse_tensor_text(text: str) -> BoolTensor:
    """``dims: n1 n2 ...`` header, then row-major '0'/'1' entries."""
    lines = [
        ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines or not lines[0].startswith("dims:"):
        raise ValidationError('tensor text must start with a "dims:" line')
    try:
        dims = [int(x) for x in lines[0][len("dims:"):].split()]
    except ValueError as exc:
        raise ValidationError(f"bad dims line {lines[0]!r}") from exc
    body = "".join("".join(ln.split()) for ln in lines[1:])
    if set(body) - {"0", "1"}:
        raise ValidationError("tensor entries must be '0' or '1'")
    expected = 1
    for d in dims:
        expected *= d
    if len(body) != expected:
        raise ValidationError(f"expected {expected} entries for dims {dims}, got {len(body)}")
    return BoolTensor.from_flat(dims, (int(ch) for ch in body))


def format_tensor_text(T: BoolTensor) -> str:
    flat = "".join(str(int(x)) for x in T.array.ravel())
    return "dims: " + " ".join(str(d) for d in T.dims) + "\n" + flat + "\n"


def tensor_from_json(obj) -> BoolTensor:
    if isinstance(obj, dict):
        if "entries" in obj:
            return BoolTensor.from_flat(obj["dims"], obj["entries"])
        return BoolTensor(obj["data"])
    return BoolTensor(obj)


def tensor_decomposition_to_json(d: SignedTensorDecomposition) -> dict:
    return {
        "dims": list(d.dims),
        "terms": [
            {"sign": t.sign, "sets": [[k + 1 for k in s] for s in t.prim.key()]}
            for t in d.terms
        ],
    }


def tensor_decomposition_from_json(obj: dict) -> SignedTensorDecomposition:
    try:
        return SignedTensorDecomposition(
            tuple(obj["dims"]),
            tuple(
                TensorTerm(
                    int(t["sign"]),
                    PrimitiveTensor(tuple(frozenset(k - 1 for k in s) for s in t["sets"])),
                )
                for t in obj["terms"]
            ),
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed tensor decomposition JSON: {exc}") from exc


def fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def is_json(text: str) -> bool:
    stripped = text.lstrip()
    return stripped[:1] in ("{", "[")


def load_matrix(text: str) -> BoolMatrix:
    if is_json(text):
        try:
            return matrix_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from exc
    return parse_matrix_text(text)


def load_tensor(text: str) -> BoolTensor:
    if is_json(text):
        try:
            return tensor_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from exc
    return parse_tensor_text(text)


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc
