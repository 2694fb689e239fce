"""Command-line entry point: ``signrank <command> [options]``.

Exit codes: 0 success, 2 usage, 3 resource limit, 4 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .core import DEFAULT_INDEPENDENCE_CAP, exact_rank, verify_decomposition
from .decompose import maximal_independent_columns, signed_rectangle_decomposition
from .errors import SignrankError, UsageError
from .experiment import GENERATORS, ExperimentConfig, generate_matrix, run_experiment, write_csv
from .formats import (
    decomposition_from_json,
    decomposition_to_json,
    family_from_json,
    family_to_json,
    format_matrix_text,
    fraction_text,
    load_json,
    load_matrix,
    load_tensor,
    tensor_decomposition_to_json,
)
from .oracles import exact_partition_number, exact_signed_rank, max_monochromatic_rectangle
from .setsys import best_monochromatic_subfamilies, check_cross_intersecting, signed_to_cross_intersecting
from .tensor import flattening_rank, tensor_signed_decomposition

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INVALID = 0, 2, 3, 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from exc


def _decomposition_text(d) -> str:
    lines = [f"# {d.m}x{d.n}, {len(d)} terms"]
    for t in d.terms:
        rows, cols = t.rect.key()
        lines.append(
            f"{'+' if t.sign > 0 else '-'} rows {','.join(str(i + 1) for i in rows)}"
            f" cols {','.join(str(j + 1) for j in cols)}"
        )
    return "\n".join(lines)


def cmd_rank(args) -> int:
    M = load_matrix(_read(args.input))
    r = exact_rank(M)
    _write(args, _dump({"rank": r}) if args.format == "json" else str(r))
    return EXIT_OK


def cmd_decompose(args) -> int:
    M = load_matrix(_read(args.input))
    order = None
    if args.order:
        order = [j - 1 for j in _int_list(args.order)]
    basis = maximal_independent_columns(M, order, args.cap_independence)
    d = signed_rectangle_decomposition(M, basis=basis)
    if args.format == "text":
        _write(args, _decomposition_text(d))
    else:
        out = decomposition_to_json(d)
        out["independent_set"] = [j + 1 for j in basis.columns]
        _write(args, _dump(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    M = load_matrix(_read(args.input))
    d = decomposition_from_json(load_json(_read(args.decomposition)))
    ok = verify_decomposition(M, d)
    if args.format == "json":
        _write(args, _dump({"valid": ok, "terms": len(d)}))
    else:
        _write(args, "valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_INVALID


def _oracle(args, fn) -> int:
    M = load_matrix(_read(args.input))
    res = fn(M, args.budget_nodes)
    out = decomposition_to_json(res.witness)
    out.update(
        value=res.value, exhausted=res.exhausted, lower_bound=res.lower_bound, nodes=res.nodes
    )
    if args.format == "text":
        status = "exact" if res.exhausted else f"upper bound (lower bound {res.lower_bound})"
        _write(args, f"{res.value} {status}\n" + _decomposition_text(res.witness))
    else:
        _write(args, _dump(out))
    return EXIT_OK


def cmd_exact_ur(args) -> int:
    return _oracle(args, exact_signed_rank)


def cmd_exact_p(args) -> int:
    return _oracle(args, exact_partition_number)


def cmd_monorect(args) -> int:
    M = load_matrix(_read(args.input))
    mono = max_monochromatic_rectangle(M)
    rows, cols = mono.rect.key()
    out = {
        "rows": [i + 1 for i in rows],
        "cols": [j + 1 for j in cols],
        "value": mono.value,
        "density": fraction_text(mono.density),
    }
    if args.format == "text":
        _write(args, f"value {mono.value} density {out['density']} rows {out['rows']} cols {out['cols']}")
    else:
        _write(args, _dump(out))
    return EXIT_OK


def cmd_tensor_decompose(args) -> int:
    T = load_tensor(_read(args.input))
    lam = None if args.lambda_ is None else args.lambda_ - 1
    d = tensor_signed_decomposition(T, lam, cap=args.cap_independence)
    out = tensor_decomposition_to_json(d)
    out["flattening_rank"] = flattening_rank(T)
    _write(args, _dump(out))
    return EXIT_OK


def cmd_to_setsys(args) -> int:
    M = load_matrix(_read(args.input))
    if args.decomposition:
        d = decomposition_from_json(load_json(_read(args.decomposition)))
    else:
        d = signed_rectangle_decomposition(M, cap=args.cap_independence)
    p, u = signed_to_cross_intersecting(M, d)
    out = family_to_json(p)
    out["u"] = u
    _write(args, _dump(out))
    return EXIT_OK


def cmd_check_setsys(args) -> int:
    p = family_from_json(load_json(_read(args.input)))
    allowed = _int_list(args.allowed) if args.allowed else list(range(p.d + 1))
    ok = check_cross_intersecting(p, allowed)
    out = {"cross_intersecting": ok, "allowed": sorted(set(allowed))}
    if args.ab is not None and ok:
        a, b = args.ab
        best = best_monochromatic_subfamilies(p, a, b)
        out["monochromatic"] = {
            "rows": [i + 1 for i in best.rows],
            "cols": [j + 1 for j in best.cols],
            "value": best.value,
            "density": fraction_text(best.density),
        }
    if args.format == "text":
        _write(args, "cross-intersecting" if ok else "not cross-intersecting")
    else:
        _write(args, _dump(out))
    return EXIT_OK if ok else EXIT_INVALID


def cmd_gen(args) -> int:
    M = generate_matrix(args.kind, args.m, args.n, args.density, args.k, args.seed)
    if args.format == "json":
        _write(args, _dump({"m": M.m, "n": M.n, "rows": M.tolist()}))
    else:
        _write(args, format_matrix_text(M))
    return EXIT_OK


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        generator=args.generator or "",
        count=args.count,
        m=args.m,
        n=args.n,
        density=args.density,
        k=args.k,
        seed=args.seed,
        budget_nodes=args.budget_nodes,
        oracles=not args.no_oracles,
        mono=not args.no_mono,
        jobs=args.jobs,
    )
    records = run_experiment(cfg)
    if args.output == "-":
        write_csv(records, sys.stdout, timing=not args.no_timing)
    else:
        with open(args.output, "w", newline="") as fh:
            write_csv(records, fh, timing=not args.no_timing)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signrank",
        description="Signed rectangle decompositions of Boolean matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    # parents share Action objects, so each subcommand gets its own copy
    def io(fmt="json"):
        opts = argparse.ArgumentParser(add_help=False)
        opts.add_argument("--input", "-i", default="-", help="input file (default stdin)")
        opts.add_argument("--output", "-o", default="-", help="output file (default stdout)")
        opts.add_argument("--format", choices=("json", "csv", "text"), default=fmt)
        return opts

    cap_opt = argparse.ArgumentParser(add_help=False)
    cap_opt.add_argument("--cap-independence", type=int, default=DEFAULT_INDEPENDENCE_CAP)

    budget_opt = argparse.ArgumentParser(add_help=False)
    budget_opt.add_argument(
        "--budget-nodes", type=int, default=None, help="search node budget (default unlimited)"
    )

    p = sub.add_parser("rank", parents=[io()], help="exact rank over the rationals")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("decompose", parents=[io(), cap_opt], help="constructive signed decomposition")
    p.add_argument("--order", help="column scan order, 1-based, comma separated")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[io()], help="check a decomposition against a matrix")
    p.add_argument("--decomposition", "-d", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact-ur", parents=[io(), budget_opt], help="exact signed rectangle rank")
    p.set_defaults(func=cmd_exact_ur)

    p = sub.add_parser("exact-p", parents=[io(), budget_opt], help="exact partitioning number")
    p.set_defaults(func=cmd_exact_p)

    p = sub.add_parser("monorect", parents=[io()], help="largest monochromatic rectangle")
    p.set_defaults(func=cmd_monorect)

    p = sub.add_parser("tensor-decompose", parents=[io(), cap_opt], help="signed primitive-tensor decomposition")
    p.add_argument("--lambda", dest="lambda_", type=int, help="coordinate to split first, 1-based")
    p.set_defaults(func=cmd_tensor_decompose)

    p = sub.add_parser("to-setsys", parents=[io(), cap_opt], help="cross-intersecting families from a signed decomposition")
    p.add_argument("--decomposition", "-d", help="decomposition JSON (default: constructive)")
    p.set_defaults(func=cmd_to_setsys)

    p = sub.add_parser("check-setsys", parents=[io()], help="check intersection sizes of a family pair")
    p.add_argument("--allowed", "-L", help="allowed intersection sizes, comma separated")
    p.add_argument("--ab", nargs=2, type=int, metavar=("A", "B"), help="also report the best monochromatic subfamilies")
    p.set_defaults(func=cmd_check_setsys)

    p = sub.add_parser("gen", parents=[io("text")], help="generate a matrix")
    p.add_argument("kind", choices=GENERATORS)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("experiment", parents=[io("csv"), budget_opt], help="run a CSV experiment")
    p.add_argument("--generator", choices=GENERATORS + ("exhaustive",))
    p.add_argument("--count", type=int, default=0)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-oracles", action="store_true", help="skip exact ur and p")
    p.add_argument("--no-mono", action="store_true", help="skip the monochromatic rectangle")
    p.add_argument("--no-timing", action="store_true", help="omit wall-time columns")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SignrankError as exc:
        print(f"signrank: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
