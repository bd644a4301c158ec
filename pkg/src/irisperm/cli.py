"""Command-line interface.

Subcommands: compute, alpha, validate, crosscheck, bench.  All stdout is
JSON (JSON lines for the harness commands); failures are classified by
exit code: 0 success, 1 discrepancies found (crosscheck), 2 alpha
validation failure, 3 input error, 4 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .alphas import (
    AlphaConditionError,
    AlphaMatrix,
    EnumerationCapError,
    identity_alpha,
    lemma1_alpha,
    theorem1_alpha,
    validate_alpha,
)
from .crosscheck import TrialSpec, bench, emit_jsonl, run_crosscheck
from .engine import (
    DEFAULT_BIT_GUARD,
    DEFAULT_GRID_CAP,
    EngineConfig,
    InvalidAlphaError,
    ResourceGuardError,
    auto_k,
    per_m_bigint,
    per_m_sparse,
    quadrature_permanent,
    theorem2_permanent,
)
from .matrices import ComplexIntMatrix
from .oracles import DimensionCapError, grid_permanent, laplace_permanent, naive_permanent, ryser_permanent
from .primes import cube_p, minimal_p

EXIT_OK = 0
EXIT_DISCREPANCIES = 1
EXIT_ALPHA_INVALID = 2
EXIT_INPUT = 3
EXIT_GUARD = 4


class InputError(ValueError):
    pass


def _bit_guard() -> int:
    return int(os.environ.get("IRIS_BIT_GUARD", DEFAULT_BIT_GUARD))


def _grid_cap() -> int:
    return int(os.environ.get("IRIS_GRID_CAP", DEFAULT_GRID_CAP))


def parse_matrix(text: str) -> ComplexIntMatrix:
    """JSON {"rows": [[...]]} or a whitespace-separated integer grid."""
    text = text.strip()
    if not text:
        raise InputError("empty matrix input")
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from exc
        if "rows" not in obj:
            raise InputError('matrix JSON needs a "rows" key')
        rows = obj["rows"]
    else:
        try:
            rows = [[int(tok) for tok in line.split()] for line in text.splitlines() if line.strip()]
        except ValueError as exc:
            raise InputError(f"non-integer grid entry: {exc}") from exc
    try:
        return ComplexIntMatrix(rows)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _read_matrix(path: str | None) -> ComplexIntMatrix:
    if path is None or path == "-":
        return parse_matrix(sys.stdin.read())
    try:
        with open(path) as fh:
            return parse_matrix(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _resolve_p(arg: str, n: int) -> int:
    if arg == "min":
        return minimal_p(n) if n >= 3 else 1
    if arg == "cube":
        return cube_p(n)
    try:
        return int(arg)
    except ValueError as exc:
        raise InputError(f"bad --p value {arg!r}") from exc


def _build_alpha(kind: str, n: int, p_arg: str, beta_arg: str, alpha_file: str | None) -> AlphaMatrix:
    if kind == "file":
        if not alpha_file:
            raise InputError("--alpha-kind file requires --alpha-file")
        try:
            with open(alpha_file) as fh:
                return AlphaMatrix.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
            raise InputError(f"bad alpha file: {exc}") from exc
    p = _resolve_p(p_arg, n)
    if kind == "identity":
        return identity_alpha(n)
    if kind == "theorem1":
        return theorem1_alpha(n, p, override=n <= 2)
    if kind == "lemma1":
        beta = None if beta_arg == "auto" else int(beta_arg)
        return lemma1_alpha(n, p, beta)
    raise InputError(f"unknown alpha kind {kind!r}")


def _emit(obj: dict, no_timing: bool):
    if no_timing:
        obj = {k: v for k, v in obj.items() if not k.startswith("elapsed")}
        if isinstance(obj.get("report"), dict):
            obj["report"] = {
                k: v for k, v in obj["report"].items() if not k.startswith("elapsed")
            }
    print(json.dumps(obj, sort_keys=True))


def _value_json(value) -> dict:
    if hasattr(value, "to_json"):
        return value.to_json()
    value = complex(value)
    return {"re": repr(value.real), "im": repr(value.imag)}


def cmd_compute(args) -> int:
    A = _read_matrix(args.matrix)
    n = A.n
    start = time.perf_counter()
    alpha_json = None
    validated = None

    if args.engine in ("naive", "ryser", "laplace", "grid"):
        fn = {
            "naive": naive_permanent,
            "ryser": ryser_permanent,
            "laplace": laplace_permanent,
            "grid": grid_permanent,
        }[args.engine]
        value = fn(A)
    elif args.engine == "quadrature":
        kind = args.alpha_kind if args.alpha_kind != "lemma1" else "theorem1"
        alpha = _build_alpha(kind, n, args.p, args.beta, args.alpha_file)
        alpha_json = alpha.to_json()
        value = quadrature_permanent(A, alpha, grid_cap=_grid_cap())
    elif args.engine == "theorem2":
        if args.validate == "skip" and not args.unsafe:
            raise InputError("--validate skip requires --unsafe")
        if args.alpha_kind in ("file", "identity"):
            alpha = _build_alpha(args.alpha_kind, n, args.p, args.beta, args.alpha_file)
            if alpha.t != 1:
                raise InputError("theorem2 engine needs a one-row alpha")
            alpha_json = alpha.to_json()
            if args.validate == "brute":
                report = validate_alpha(alpha)
                if not report.valid:
                    raise InvalidAlphaError(report)
                validated = True
            else:
                validated = None
            if args.mode == "bigint":
                k = auto_k(A.M, n) if args.k == "auto" else int(args.k)
                value = per_m_bigint(A, alpha, k, bit_guard=_bit_guard(), skip_validation=True)
            else:
                value = per_m_sparse(A, alpha, skip_validation=True)
        else:
            config = EngineConfig(
                mode=args.mode,
                k=args.k if args.k == "auto" else int(args.k),
                p_policy="minimal" if args.p == "min" else ("cube" if args.p == "cube" else int(args.p)),
                beta=args.beta if args.beta == "auto" else int(args.beta),
                validation=args.validate,
                bit_guard=_bit_guard(),
            )
            value, report = theorem2_permanent(A, config)
            alpha_json = report["alpha"]
            validated = report["validation"].get("valid")
    else:
        raise InputError(f"unknown engine {args.engine!r}")

    out = {
        "permanent": _value_json(value),
        "engine": args.engine,
        "alpha": alpha_json,
        "validated": validated,
        "elapsed_ms": (time.perf_counter() - start) * 1000.0,
    }
    _emit(out, args.no_timing)
    return EXIT_OK


def cmd_alpha(args) -> int:
    alpha = _build_alpha(args.kind, args.n, args.p, args.beta, args.alpha_file)
    out = alpha.to_json()
    out["alpha_T"] = [str(t) for t in alpha.alpha_T]
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK


def cmd_validate(args) -> int:
    alpha = _build_alpha(args.kind, args.n, args.p, args.beta, args.alpha_file)
    report = validate_alpha(alpha)
    out = report.to_json()
    if args.no_timing:
        out.pop("elapsed_s", None)
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK if report.valid else EXIT_ALPHA_INVALID


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _make_spec(args) -> TrialSpec:
    lo, hi = _parse_range(args.n)
    return TrialSpec(
        n_lo=lo,
        n_hi=hi,
        entry_kind=args.entry_kind,
        M=args.M,
        trials=args.trials,
        seed=args.seed,
        engines=tuple(args.engines.split(",")),
        p_policy="minimal" if args.p == "min" else ("cube" if args.p == "cube" else int(args.p)),
        tolerance=args.tolerance,
    )


def cmd_crosscheck(args) -> int:
    spec = _make_spec(args)
    summary, records = run_crosscheck(spec)
    sys.stdout.write(emit_jsonl(summary, records))
    return EXIT_DISCREPANCIES if records else EXIT_OK


def cmd_bench(args) -> int:
    spec = _make_spec(args)
    rows = bench(spec)
    if args.csv:
        keys = sorted({k for row in rows for k in row})
        print(",".join(keys))
        for row in rows:
            print(",".join(str(row.get(k, "")) for k in keys))
    else:
        for row in rows:
            print(json.dumps(row, sort_keys=True))
    return EXIT_OK


def _add_alpha_flags(sp, with_kind_default="lemma1"):
    sp.add_argument("--alpha-kind", "--kind", dest="alpha_kind", default=with_kind_default,
                    choices=["identity", "theorem1", "lemma1", "file"])
    sp.add_argument("--alpha-file", default=None)
    sp.add_argument("--p", default="min", help="min | cube | explicit 1-based prime index")
    sp.add_argument("--beta", default="auto")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="irisperm", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("compute", help="compute a permanent")
    sp.add_argument("--matrix", default=None, help="path to matrix file, '-' or omitted for stdin")
    sp.add_argument("--engine", default="theorem2",
                    choices=["naive", "ryser", "laplace", "grid", "quadrature", "theorem2"])
    sp.add_argument("--mode", default="sparse", choices=["sparse", "bigint"])
    sp.add_argument("--k", default="auto")
    sp.add_argument("--validate", default="brute", choices=["brute", "probe", "skip"])
    sp.add_argument("--unsafe", action="store_true")
    sp.add_argument("--no-timing", action="store_true")
    _add_alpha_flags(sp)
    sp.set_defaults(fn=cmd_compute)

    sp = sub.add_parser("alpha", help="build an exponent matrix")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--kind", dest="kind", default="lemma1",
                    choices=["identity", "theorem1", "lemma1", "file"])
    sp.add_argument("--alpha-file", default=None)
    sp.add_argument("--p", default="min")
    sp.add_argument("--beta", default="auto")
    sp.set_defaults(fn=cmd_alpha)

    sp = sub.add_parser("validate", help="brute-force certify an exponent matrix")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--kind", dest="kind", default="lemma1",
                    choices=["identity", "theorem1", "lemma1", "file"])
    sp.add_argument("--alpha-file", default=None)
    sp.add_argument("--p", default="min")
    sp.add_argument("--beta", default="auto")
    sp.add_argument("--no-timing", action="store_true")
    sp.set_defaults(fn=cmd_validate)

    for name, fn in (("crosscheck", cmd_crosscheck), ("bench", cmd_bench)):
        sp = sub.add_parser(name)
        sp.add_argument("--engines", required=True, help="comma-separated engine names")
        sp.add_argument("--n", required=True, help="dimension or range lo..hi")
        sp.add_argument("--trials", type=int, default=10)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--entry-kind", default="binary", choices=["binary", "integer", "gaussian"])
        sp.add_argument("--M", type=int, default=1)
        sp.add_argument("--tolerance", type=float, default=None)
        sp.add_argument("--p", default="min")
        sp.add_argument("--csv", action="store_true")
        sp.set_defaults(fn=fn)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InvalidAlphaError as exc:
        print(json.dumps({"error": "alpha-invalid"}, sort_keys=True))
        witness = exc.report.witness
        print(
            json.dumps(
                {"error": "alpha-invalid", "witness": list(witness) if witness else None},
                sort_keys=True,
            ),
            file=sys.stderr,
        )
        return EXIT_ALPHA_INVALID
    except (ResourceGuardError, EnumerationCapError, DimensionCapError) as exc:
        print(json.dumps({"error": "resource-guard", "detail": str(exc)}, sort_keys=True))
        print(str(exc), file=sys.stderr)
        return EXIT_GUARD
    except (InputError, AlphaConditionError, ValueError) as exc:
        print(json.dumps({"error": "input", "detail": str(exc)}, sort_keys=True))
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
