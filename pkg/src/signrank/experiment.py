"""Instance generators and the CSV experiment harness.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded with
the integer ``seed * 1000003 + instance``, so every row of a CSV can be
regenerated on its own and outputs agree across platforms.
"""

from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import asdict, dataclass, fields
from itertools import product
from multiprocessing import Pool
from typing import Iterator, Optional

from .core import BoolMatrix, exact_rank, verify_decomposition
from .decompose import (
    independent_set_bound_check,
    maximal_independent_columns,
    signed_rectangle_decomposition,
)
from .errors import UsageError, ValidationError
from .formats import fraction_text
from .oracles import (
    DEFAULT_MONO_CAP,
    exact_partition_number,
    exact_signed_rank,
    max_monochromatic_rectangle,
)

GENERATORS = ("random-density", "rectangle-sum", "identity", "complement-identity")
SEED_STRIDE = 1000003


def instance_seed(seed: int, instance: int) -> int:
    return seed * SEED_STRIDE + instance


def _nonempty_subset(rng: random.Random, size: int) -> list[int]:
    while True:
        picked = [i for i in range(size) if rng.random() < 0.5]
        if picked:
            return picked


def generate_matrix(
    kind: str,
    m: Optional[int] = None,
    n: Optional[int] = None,
    density: float = 0.5,
    k: int = 1,
    seed: int = 0,
) -> BoolMatrix:
    """Build a test matrix.

    ``identity`` and ``complement-identity`` are square of size ``n``.
    ``rectangle-sum`` is the Boolean OR of ``k`` random rectangles.
    """
    if kind not in GENERATORS:
        raise UsageError(f"unknown generator {kind!r}; choose from {', '.join(GENERATORS)}")
    if kind in ("identity", "complement-identity"):
        size = n if n is not None else m
        if size is None or size < 1:
            raise UsageError(f"{kind} needs a positive size n")
        if kind == "identity":
            return BoolMatrix.identity(size)
        return BoolMatrix(tuple(tuple(int(i != j) for j in range(size)) for i in range(size)))

    if m is None or n is None or m < 1 or n < 1:
        raise UsageError(f"{kind} needs positive dimensions m and n")
    rng = random.Random(seed)
    if kind == "random-density":
        if not 0.0 <= density <= 1.0:
            raise UsageError(f"density {density} is outside [0, 1]")
        return BoolMatrix(
            tuple(tuple(int(rng.random() < density) for _ in range(n)) for _ in range(m))
        )
    if k < 0:
        raise UsageError("rectangle count k must be nonnegative")
    masks = [0] * m
    for _ in range(k):
        rows = _nonempty_subset(rng, m)
        cmask = sum(1 << j for j in _nonempty_subset(rng, n))
        for i in rows:
            masks[i] |= cmask
    return BoolMatrix.from_masks(masks, n)


@dataclass
class ExperimentConfig:
    generator: str = ""
    count: int = 0
    m: Optional[int] = None
    n: Optional[int] = None
    density: float = 0.5
    k: int = 1
    seed: int = 0
    budget_nodes: Optional[int] = 100_000
    oracles: bool = True
    mono: bool = True
    jobs: int = 1


@dataclass
class ExperimentRecord:
    instance: int
    m: int
    n: int
    seed: int
    matrix: str
    rank: int
    indep_size: int
    terms: int
    ur: Optional[int] = None
    ur_exhausted: Optional[bool] = None
    ur_lower: Optional[int] = None
    ur_nodes: Optional[int] = None
    p: Optional[int] = None
    p_exhausted: Optional[bool] = None
    p_lower: Optional[int] = None
    p_nodes: Optional[int] = None
    mono_value: Optional[int] = None
    mono_density: Optional[str] = None
    t_decompose: float = 0.0
    t_ur: Optional[float] = None
    t_p: Optional[float] = None
    t_mono: Optional[float] = None


CSV_COLUMNS = [f.name for f in fields(ExperimentRecord)]
TIMING_COLUMNS = [c for c in CSV_COLUMNS if c.startswith("t_")]


def _matrix_key(M: BoolMatrix) -> str:
    return "/".join("".join(str(x) for x in row) for row in M.rows)


def _instances(cfg: ExperimentConfig) -> Iterator[tuple[int, int, BoolMatrix]]:
    if cfg.generator == "exhaustive":
        if not cfg.m or not cfg.n or cfg.m * cfg.n > 20:
            raise UsageError("exhaustive generation needs m, n with m*n <= 20")
        for idx, bits in enumerate(product((0, 1), repeat=cfg.m * cfg.n)):
            rows = tuple(bits[i * cfg.n:(i + 1) * cfg.n] for i in range(cfg.m))
            yield idx, cfg.seed, BoolMatrix(rows)
        return
    if cfg.count < 1:
        raise UsageError("experiment needs a positive instance count")
    for idx in range(cfg.count):
        s = instance_seed(cfg.seed, idx)
        yield idx, s, generate_matrix(cfg.generator, cfg.m, cfg.n, cfg.density, cfg.k, s)


def _check_config(cfg: ExperimentConfig) -> None:
    if not cfg.generator:
        raise UsageError("experiment config names no generator")
    if cfg.generator != "exhaustive" and cfg.generator not in GENERATORS:
        raise UsageError(f"unknown generator {cfg.generator!r}")


def measure(idx: int, seed: int, M: BoolMatrix, cfg: ExperimentConfig) -> ExperimentRecord:
    """Run every stage on one matrix and check the invariants."""
    t0 = time.perf_counter()
    basis = maximal_independent_columns(M)
    dec = signed_rectangle_decomposition(M, basis=basis)
    t_dec = time.perf_counter() - t0
    r = exact_rank(M)
    rec = ExperimentRecord(idx, M.m, M.n, seed, _matrix_key(M), r, len(basis), len(dec), t_decompose=t_dec)

    if not verify_decomposition(M, dec):
        raise ValidationError(f"instance {idx}: decomposition does not reconstruct")
    if len(dec) > 2 * len(basis) or len(basis) > M.n:
        raise ValidationError(f"instance {idx}: term count exceeds 2|S|")
    if not independent_set_bound_check(len(basis), r):
        raise ValidationError(f"instance {idx}: independent set too large for rank {r}")

    if cfg.oracles:
        t0 = time.perf_counter()
        ur = exact_signed_rank(M, cfg.budget_nodes)
        rec.t_ur = time.perf_counter() - t0
        t0 = time.perf_counter()
        p = exact_partition_number(M, cfg.budget_nodes)
        rec.t_p = time.perf_counter() - t0
        rec.ur, rec.ur_exhausted, rec.ur_lower, rec.ur_nodes = ur.value, ur.exhausted, ur.lower_bound, ur.nodes
        rec.p, rec.p_exhausted, rec.p_lower, rec.p_nodes = p.value, p.exhausted, p.lower_bound, p.nodes
        if not verify_decomposition(M, ur.witness) or not verify_decomposition(M, p.witness):
            raise ValidationError(f"instance {idx}: oracle witness does not reconstruct")
        if ur.exhausted and len(dec) < ur.value:
            raise ValidationError(f"instance {idx}: constructive size below exact ur")
        if ur.exhausted and p.exhausted and not r <= ur.value <= p.value:
            raise ValidationError(f"instance {idx}: sandwich r <= ur <= p fails")

    if cfg.mono and min(M.m, M.n) <= DEFAULT_MONO_CAP:
        t0 = time.perf_counter()
        mono = max_monochromatic_rectangle(M)
        rec.t_mono = time.perf_counter() - t0
        rec.mono_value = mono.value
        rec.mono_density = fraction_text(mono.density)
    return rec


def _measure_packed(args):
    return measure(*args)


def run_experiment(cfg: ExperimentConfig) -> Iterator[ExperimentRecord]:
    """Yield one checked record per instance, in instance order."""
    _check_config(cfg)
    work = ((idx, seed, M, cfg) for idx, seed, M in _instances(cfg))
    if cfg.jobs > 1:
        with Pool(cfg.jobs) as pool:
            yield from pool.imap(_measure_packed, work, chunksize=16)
    else:
        for args in work:
            yield measure(*args)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_csv(records, stream, timing: bool = True) -> None:
    columns = CSV_COLUMNS if timing else [c for c in CSV_COLUMNS if c not in TIMING_COLUMNS]
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        row = asdict(rec)
        writer.writerow([_cell(row[c]) for c in columns])


def experiment_csv(cfg: ExperimentConfig, timing: bool = True) -> str:
    buf = io.StringIO()
    write_csv(run_experiment(cfg), buf, timing=timing)
    return buf.getvalue()


def strip_timing(csv_text: str) -> str:
    """Drop timing columns from CSV text produced by :func:`write_csv`."""
    rows = list(csv.reader(io.StringIO(csv_text)))
    if not rows:
        return ""
    keep = [i for i, name in enumerate(rows[0]) if name not in TIMING_COLUMNS]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([row[i] for i in keep])
    return buf.getvalue()
