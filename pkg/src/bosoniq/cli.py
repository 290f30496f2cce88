"""Command-line entry point: map, verify, sweep, formulas.

Exit codes: 0 success, 1 verification failure, 2 usage/schema errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .encode import encode_operator
from .layout import EncodingLayout
from .models import build_generic, ingest_tensors
from .ops import OperatorSpec, SpecSchemaError, spec_from_json
from .oracle import small_case_suite, verify
from .resources import analytic_counts, break_even_d
from .sweep import SweepConfig, run_and_write

USAGE_ERROR = 2
VERIFY_FAILURE = 1


def _load_spec(args) -> OperatorSpec:
    if args.tensors:
        return build_generic(ingest_tensors(args.tensors))
    if args.spec is None:
        raise SpecSchemaError("no operator given: use --spec or --tensors")
    text = sys.stdin.read() if args.spec == "-" else Path(args.spec).read_text()
    return spec_from_json(text)


def _layout_from_args(args) -> EncodingLayout:
    return EncodingLayout(args.mapping, N=args.N, M=args.M, d=args.d)


def cmd_map(args) -> int:
    try:
        spec = _load_spec(args)
        layout = _layout_from_args(args)
        compiled = encode_operator(spec, layout, tolerance=args.tolerance)
    except (SpecSchemaError, ValueError, IndexError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    text = compiled.to_text()
    if text:
        print(text)
    return 0


def cmd_verify(args) -> int:
    try:
        if args.all_small:
            cases = small_case_suite()
        else:
            spec = _load_spec(args)
            cases = [(spec, _layout_from_args(args))]
    except (SpecSchemaError, ValueError, IndexError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    all_passed = True
    for spec, layout in cases:
        report = verify(spec, layout, tolerance=args.tolerance, corrupt=args.corrupt)
        all_passed &= report.passed
        print(json.dumps(report.to_json()))
    return 0 if all_passed else VERIFY_FAILURE


def cmd_sweep(args) -> int:
    if args.print_config:
        print(json.dumps(SweepConfig(family=args.print_config).to_json(), indent=1))
        return 0
    if not args.config:
        print("error: --config or --print-config required", file=sys.stderr)
        return USAGE_ERROR
    try:
        cfg = SweepConfig.from_json(Path(args.config).read_text())
    except (ValueError, TypeError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: bad sweep config: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.output:
        cfg.output = args.output
    if args.jobs:
        cfg.jobs = args.jobs
    out = run_and_write(cfg)
    print(f"wrote {out}")
    return 0


def cmd_formulas(args) -> int:
    print(f"bosoniq {__version__} closed forms")
    print()
    print("qubit counts (d = N+1)")
    print("  N    M   U1Q   U2Q  B1Q  B2Q")
    for N in args.N:
        for M in args.M:
            counts = [
                analytic_counts("qubits", mapping, N=N, M=M)["n_qubits"]
                for mapping in ("U1Q", "U2Q", "B1Q", "B2Q")
            ]
            print(f"{N:3d} {M:4d} {counts[0]:5d} {counts[1]:5d} {counts[2]:4d} {counts[3]:4d}")
    print()
    print(f"transition-element counts at k={args.k} (symmetric halves these)")
    print("  N  rz_U1Q  cnot_U1Q    rz_U2Q   cnot_U2Q  cnot_ratio")
    for N in args.N:
        u1 = analytic_counts("kRDM_ODT", "U1Q", N=N, k=args.k)
        u2 = analytic_counts("kRDM_ODT", "U2Q", N=N, k=args.k)
        ratio = analytic_counts("kRDM_ratio", N=N, k=args.k)["cnot_ratio"]
        print(
            f"{N:3d} {u1['n_rz']:7d} {u1['n_cnot']:9d} {u2['n_rz']:9d}"
            f" {u2['n_cnot']:10d} {ratio:11.1f}"
        )
    print()
    print("break-even local dimension d(N, k)")
    print("  N      k=1    k=2    k=3")
    for N in args.N:
        values = [break_even_d(N, k) for k in (1, 2, 3)]
        print(f"{N:3d}   {values[0]:6.3f} {values[1]:6.3f} {values[2]:6.3f}")
    print()
    print("periodic Bose-Hubbard closed forms")
    print("  N    M  rz_U1Q cnot_U1Q   rz_U2Q cnot_U2Q  rz_ratio cnot_ratio")
    for N in args.N:
        for M in args.M:
            u1 = analytic_counts("BHM_PBC", "U1Q", N=N, M=M)
            u2 = analytic_counts("BHM_PBC", "U2Q", N=N, M=M)
            ratios = analytic_counts("BHM_ratio", N=N)
            print(
                f"{N:3d} {M:4d} {u1['n_rz']:7d} {u1['n_cnot']:8d} {u2['n_rz']:8d}"
                f" {u2['n_cnot']:8d} {ratios['rz_ratio']:9.2f} {ratios['cnot_ratio']:10.2f}"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bosoniq",
        description="Compile bosonic operators to Pauli sums and estimate "
        "Trotter-step resources under the U1Q/B1Q/U2Q/B2Q encodings.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_layout_flags(p):
        p.add_argument("--mapping", required=True, choices=["U1Q", "B1Q", "U2Q", "B2Q"])
        p.add_argument("--N", type=int, required=True, help="particle count")
        p.add_argument("--M", type=int, required=True, help="mode/site count")
        p.add_argument("--d", type=int, default=None, help="local dimension (2Q only)")

    def add_spec_flags(p):
        p.add_argument("--spec", help="operator JSON file, or - for stdin")
        p.add_argument("--tensors", help="generic (h, V) tensor JSON file")

    p_map = sub.add_parser("map", help="print the compiled Pauli-string listing")
    add_spec_flags(p_map)
    add_layout_flags(p_map)
    p_map.add_argument("--tolerance", type=float, default=1e-12)
    p_map.set_defaults(func=cmd_map)

    p_verify = sub.add_parser("verify", help="compare against the exact operator")
    add_spec_flags(p_verify)
    p_verify.add_argument("--mapping", choices=["U1Q", "B1Q", "U2Q", "B2Q"])
    p_verify.add_argument("--N", type=int)
    p_verify.add_argument("--M", type=int)
    p_verify.add_argument("--d", type=int, default=None)
    p_verify.add_argument(
        "--all-small", action="store_true", help="run the full small-instance grid"
    )
    p_verify.add_argument("--tolerance", type=float, default=1e-10)
    p_verify.add_argument(
        "--corrupt", action="store_true", help=argparse.SUPPRESS
    )  # negative-control hook
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="run a resource sweep to CSV")
    p_sweep.add_argument("--config", help="sweep config JSON")
    p_sweep.add_argument("--output", help="override the config output path")
    p_sweep.add_argument("--jobs", type=int, default=0)
    p_sweep.add_argument(
        "--print-config",
        metavar="FAMILY",
        help="print the default config for a family and exit",
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_formulas = sub.add_parser("formulas", help="print the closed-form tables")
    p_formulas.add_argument("--N", type=int, nargs="+", default=[1, 3, 6, 10, 16])
    p_formulas.add_argument("--M", type=int, nargs="+", default=[8, 32, 128])
    p_formulas.add_argument("--k", type=int, default=1)
    p_formulas.set_defaults(func=cmd_formulas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.all_small:
        missing = [f for f in ("mapping", "N", "M") if getattr(args, f) is None]
        if missing:
            print(f"error: verify needs --{' --'.join(missing)}", file=sys.stderr)
            return USAGE_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
