"""Command-line surface: bound tables, construction, verification, sweeps.

Exit codes: 0 success, 1 verification failure, 2 parameter error,
3 resource or budget error.  Column indices in human-readable output are
1-based; machine output (--json, CSV, array files) stays 0-based.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import bounds
from .arrayfile import ArrayFormatError, read_array, write_array
from .construct import (
    DEFAULT_SEED,
    BuildConfig,
    density_build,
    moser_tardos_build,
    pgl_build,
    two_stage_build,
)
from .core import CAParams, SymbolArray
from .errors import BudgetExceededError, ResourceLimitError, UnsupportedParameterError
from .groups import make_cyclic, make_frobenius
from .verify import full_check

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARAMS = 2
EXIT_RESOURCE = 3

BOUND_METHODS = (
    "slj",
    "discrete_slj",
    "dslj_estimate",
    "two_stage",
    "gss",
    "cyclic",
    "frobenius",
    "pgl",
    "conditional_lll",
    "conditional_lll_density",
    "katona",
)


def _bound_record(method: str, params: CAParams, dependence: str) -> dict:
    if method == "slj":
        rep = bounds.slj_bound(params)
    elif method == "discrete_slj":
        rep, _ = bounds.discrete_slj_bound(params)
    elif method == "dslj_estimate":
        est = bounds.discrete_slj_estimate(params)
        return {"method": method, "value": est, "stage1_rows": None, "notes": {}}
    elif method == "two_stage":
        rep = bounds.two_stage_bound(params)
    elif method == "gss":
        rep = bounds.gss_lll_bound(params, dependence)
    elif method == "cyclic":
        rep = bounds.cyclic_lll_bound(params, dependence)
    elif method == "frobenius":
        rep = bounds.frobenius_lll_bound(params, dependence)
    elif method == "pgl":
        rep = bounds.pgl_lll_bound(params, dependence)
    elif method == "conditional_lll":
        rep = bounds.conditional_lll_two_stage_bound(params, "one_row_each")
    elif method == "conditional_lll_density":
        rep = bounds.conditional_lll_two_stage_bound(params, "discrete_slj")
    elif method == "katona":
        if params.t != 2 or params.v != 2:
            raise UnsupportedParameterError(
                "katona gives exact CAN(2,k,2) and requires t=2, v=2"
            )
        return {
            "method": method,
            "value": bounds.katona_kleitman_exact(params.k),
            "stage1_rows": None,
            "notes": {"exact": True},
        }
    else:
        raise UnsupportedParameterError(
            f"unknown method {method!r}; choose from {', '.join(BOUND_METHODS)}"
        )
    return {
        "method": rep.method,
        "value": rep.value,
        "stage1_rows": rep.stage1_rows,
        "expected_leftover": rep.expected_leftover,
        "notes": rep.notes,
    }


def cmd_bounds(args: argparse.Namespace) -> int:
    params = CAParams(args.t, args.k, args.v)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    records = [_bound_record(m, params, args.dependence) for m in methods]
    if args.json:
        doc = {"t": args.t, "k": args.k, "v": args.v, "results": records}
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
        return EXIT_OK
    for rec in records:
        stage1 = "" if rec.get("stage1_rows") is None else f"  n={rec['stage1_rows']}"
        value = rec["value"]
        shown = f"{value:.3f}" if isinstance(value, float) else f"{value}"
        print(f"{rec['method']:<28} {shown}{stage1}")
        notes = rec.get("notes") or {}
        for key in ("full_orbit_count", "orbit_count", "d_plus_1", "inequality"):
            if key in notes:
                print(f"{'':<4}{key} = {notes[key]}")
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    params = CAParams(args.t, args.k, args.v)
    seed = DEFAULT_SEED if args.seed is None else args.seed
    config = BuildConfig(
        seed=seed,
        max_stage1_attempts=args.attempts,
        resample_step_cap=args.resample_cap,
        dependence_estimate=args.dependence,
        second_stage=args.second_stage,
        n_override=args.n_override,
        workers=args.threads,
    )
    if args.strategy == "two_stage":
        array, log = two_stage_build(params, config)
    elif args.strategy == "mt_cyclic":
        array, log = moser_tardos_build(params, make_cyclic(params.v), config)
    elif args.strategy == "mt_frobenius":
        array, log = moser_tardos_build(params, make_frobenius(params.v), config)
    elif args.strategy == "pgl":
        array, log = pgl_build(params, config)
    elif args.strategy == "density":
        array = density_build(SymbolArray.empty(params))
        log = None
    else:  # argparse choices prevent this
        raise UnsupportedParameterError(f"unknown strategy {args.strategy!r}")

    write_array(args.out, array)
    if log is not None:
        for line in log.summary_lines():
            print(line)
    else:
        print(f"strategy           density\ntotal rows         {array.n_rows}")
    report = full_check(array, workers=args.threads)
    if log is not None and not log.success:
        print(f"build failed: {log.failure_reason}", file=sys.stderr)
        return EXIT_VERIFY
    if not report.is_covering:
        print(
            f"verification failed: {report.uncovered_count} uncovered", file=sys.stderr
        )
        return EXIT_VERIFY
    print(f"verified covering array with {array.n_rows} rows -> {args.out}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    array = read_array(args.path)
    if args.t is not None and args.t != array.params.t:
        p = array.params
        array = SymbolArray(CAParams(args.t, p.k, p.v), array.cells)
    report = full_check(array, workers=args.threads)
    if report.is_covering:
        print(f"OK: covers all {array.params.interaction_space_size} interactions")
        return EXIT_OK
    witness = report.first_witness
    cols = ",".join(str(c + 1) for c in witness.columns)
    syms = ",".join(str(s) for s in witness.symbols)
    print(f"NOT COVERING: {report.uncovered_count} uncovered interactions")
    print(f"first witness: columns ({cols}) symbols ({syms})")
    return EXIT_VERIFY


def _parse_range(text: str) -> list[int]:
    parts = text.split(":")
    if len(parts) == 1:
        return [int(parts[0])]
    lo, hi = int(parts[0]), int(parts[1])
    step = int(parts[2]) if len(parts) == 3 else 1
    if step < 1 or hi < lo:
        raise ValueError(f"bad range {text!r}")
    return list(range(lo, hi + 1, step))


def cmd_sweep(args: argparse.Namespace) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    ks = _parse_range(args.k)

    if "two_stage_curve" in methods:
        if len(methods) != 1:
            raise UnsupportedParameterError(
                "two_stage_curve cannot be combined with other methods"
            )
        if len(ks) != 1:
            raise UnsupportedParameterError("two_stage_curve needs a single k")
        params = CAParams(args.t, ks[0], args.v)
        rep = bounds.two_stage_bound(params)
        center = rep.stage1_rows
        if args.n is not None:
            ns = _parse_range(args.n)
        else:
            ns = list(range(max(0, center - 512), center + 513))
        with open(args.out, "w", newline="", encoding="ascii") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "objective"])
            for n in ns:
                writer.writerow([n, bounds.two_stage_objective(params, n)])
        print(f"wrote {len(ns)} rows -> {args.out}")
        return EXIT_OK

    with open(args.out, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k"] + methods)
        for k in ks:
            params = CAParams(args.t, k, args.v)
            row: list = [k]
            for m in methods:
                row.append(_bound_record(m, params, args.dependence)["value"])
            writer.writerow(row)
    print(f"wrote {len(ks)} rows -> {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverkit",
        description="Covering array bounds, constructions, and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p: argparse.ArgumentParser) -> None:
        p.add_argument("-t", type=int, required=True, help="strength")
        p.add_argument("-k", type=int, required=True, help="number of columns")
        p.add_argument("-v", type=int, required=True, help="alphabet size")

    p_bounds = sub.add_parser("bounds", help="print bound values for one (t,k,v)")
    add_params(p_bounds)
    p_bounds.add_argument("--methods", default="slj,two_stage", help="comma-separated")
    p_bounds.add_argument("--dependence", choices=("simple", "improved"), default="simple")
    p_bounds.add_argument("--json", action="store_true")
    p_bounds.set_defaults(func=cmd_bounds)

    p_build = sub.add_parser("build", help="construct and verify an array")
    add_params(p_build)
    p_build.add_argument(
        "--strategy",
        choices=("two_stage", "mt_cyclic", "mt_frobenius", "pgl", "density"),
        default="two_stage",
    )
    p_build.add_argument(
        "--seed",
        type=_seed_value,
        default=None,
        help=f"integer, or 'random' (default: fixed {DEFAULT_SEED})",
    )
    p_build.add_argument("--out", required=True, help="output array file")
    p_build.add_argument("--attempts", type=int, default=1000)
    p_build.add_argument("--resample-cap", type=int, default=10_000)
    p_build.add_argument("--n-override", type=int, default=None)
    p_build.add_argument(
        "--second-stage", choices=("one_row_each", "density_greedy"), default="one_row_each"
    )
    p_build.add_argument("--dependence", choices=("simple", "improved"), default="simple")
    p_build.add_argument("--threads", type=int, default=1)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="verify an array file")
    p_verify.add_argument("path")
    p_verify.add_argument("-t", type=int, default=None, help="override strength")
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="bound values over a k range, as CSV")
    p_sweep.add_argument("-t", type=int, required=True)
    p_sweep.add_argument("-v", type=int, required=True)
    p_sweep.add_argument("--k", required=True, help="lo:hi[:step] or a single k")
    p_sweep.add_argument("--n", default=None, help="n range for two_stage_curve")
    p_sweep.add_argument("--methods", default="slj,discrete_slj,two_stage")
    p_sweep.add_argument("--dependence", choices=("simple", "improved"), default="simple")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def _seed_value(text: str) -> int:
    if text == "random":
        import secrets

        return secrets.randbits(63)
    return int(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UnsupportedParameterError, ArrayFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except (ResourceLimitError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
