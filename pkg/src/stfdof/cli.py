"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bounds import (C_ENV_VAR, CountingMode, PhysicalConstants, SignalExtent, dof_3d_closed_form,
                     dof_space, dof_time)
from .errors import DomainError
from .mutual_info import FrequencyGrid, mi_lower_bound, mutual_information
from .sweep import PRESETS, Axis, SweepSpec, knee_radius, run_sweep, to_csv, to_json
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_VERIFY_FAILED = 0, 1


def _add_extent_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--radius", type=float, required=True, help="ball radius R in metres")
    p.add_argument("--time", type=float, required=True, help="observation time T in seconds")
    p.add_argument("--center", type=float, required=True, help="centre frequency F in Hz")
    p.add_argument("--halfband", type=float, required=True, help="half-bandwidth W in Hz")


def _extent(parser, args) -> SignalExtent:
    try:
        return SignalExtent(radius_R=args.radius, time_T=args.time,
                            center_F=args.center, half_band_W=args.halfband)
    except DomainError as exc:
        parser.error(str(exc))


def _constants(parser) -> PhysicalConstants:
    try:
        return PhysicalConstants.from_env()
    except (DomainError, ValueError) as exc:
        parser.error(f"bad {C_ENV_VAR}: {exc}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _payload(command: str, consts: PhysicalConstants, key: str, body, violations=None, seed=None) -> dict:
    return {"command": command, "constants": {"c": consts.c}, key: body,
            "violations": violations, "seed": seed}


def cmd_dof(parser, args) -> int:
    extent = _extent(parser, args)
    consts = _constants(parser)
    mode = CountingMode(args.mode)
    b = dof_3d_closed_form(extent, consts)
    result = {**b.as_dict(),
              "D_time": dof_time(extent.half_band_W, extent.time_T),
              "D_space": dof_space(extent.radius_R, extent.center_F, consts.c, mode),
              "mode": mode.value}
    if args.json:
        inputs = {"R": extent.radius_R, "T": extent.time_T, "F": extent.center_F, "W": extent.half_band_W}
        _emit(to_json(_payload("dof", consts, "results", {**inputs, **result})), None)
    else:
        for k in ("N0", "N1", "D1", "D2", "total", "D_time", "D_space"):
            print(f"{k:8s} {result[k]!r}")
    return EXIT_OK


def _sweep_spec(parser, args) -> SweepSpec:
    try:
        if args.preset:
            base = PRESETS[args.preset]
            return SweepSpec(base.axis1, base.axis2, dict(base.fixed), args.format)
        if not (args.axis1 and args.axis2):
            parser.error("sweep needs --preset or both --axis1 and --axis2")
        fixed = {}
        for item in args.fixed or []:
            name, _, value = item.partition("=")
            fixed[name.strip()] = float(value)
        return SweepSpec(Axis.parse(args.axis1), Axis.parse(args.axis2), fixed, args.format)
    except (DomainError, ValueError) as exc:
        parser.error(str(exc))


def cmd_sweep(parser, args) -> int:
    spec = _sweep_spec(parser, args)
    consts = _constants(parser)
    try:
        rows = run_sweep(spec, consts, jobs=args.jobs)
    except DomainError as exc:
        parser.error(str(exc))
    if spec.output_format == "csv":
        _emit(to_csv(rows), args.out)
    else:
        payload = _payload("sweep", consts, "rows", rows)
        payload["spec"] = spec.as_dict()
        payload["knee_R"] = knee_radius(rows, spec, consts)
        _emit(to_json(payload), args.out)
    return EXIT_OK


def cmd_verify(parser, args) -> int:
    consts = _constants(parser)
    report = run_suite(args.suite, seed=args.seed, consts=consts)
    for chk in report.checks:
        status = "PASS" if chk.passed else "FAIL"
        print(f"{status} {chk.name}: {chk.violations}/{chk.evaluated} violations, "
              f"worst ratio {chk.worst:.6g}" + (f" ({chk.note})" if chk.note else ""))
    for k, v in report.info.items():
        print(f"info {k}: {json.dumps(v)}")
    print(f"{args.suite}: {'PASS' if report.passed else 'FAIL'} ({report.violations} violations)")
    if args.report:
        body = {"checks": [c.as_dict() for c in report.checks], "info": report.info,
                "records": report.records}
        _emit(to_json(_payload(f"verify {args.suite}", consts, "results", body,
                               report.violations, args.seed)), args.report)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_mi(parser, args) -> int:
    extent = _extent(parser, args)
    consts = _constants(parser)
    if args.rho < 0:
        parser.error(f"rho must be non-negative, got {args.rho}")
    try:
        grid = FrequencyGrid.for_extent(extent, args.spacing)
    except DomainError as exc:
        parser.error(str(exc))
    res = mutual_information(grid, extent.radius_R, consts.c, args.rho)
    bound = mi_lower_bound(extent, consts, args.rho)
    summary = {"bins": len(grid), "modes_min": min(res.modes_per_bin),
               "modes_max": max(res.modes_per_bin), "total_modes": res.total_modes,
               "mutual_information": res.mutual_information, "lower_bound": bound,
               "rho": args.rho}
    if args.json:
        _emit(to_json(_payload("mi", consts, "results", {**summary, **res.as_dict()})), None)
    else:
        for k, v in summary.items():
            print(f"{k:18s} {v!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stfdof",
        description="Degrees of freedom of space-time-frequency limited wavefields.",
        epilog=f"Set {C_ENV_VAR} to override the speed of light (default 3e8 m/s).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dof", help="closed-form count for one signal extent")
    _add_extent_flags(p)
    p.add_argument("--mode", choices=[m.value for m in CountingMode], default="continuous",
                   help="ceiling handling for the narrowband spatial baseline")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dof)

    p = sub.add_parser("sweep", help="2D parameter grid of the closed-form count")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--axis1", help="NAME:start:stop:count, NAME in R,W,T,F (outer loop)")
    p.add_argument("--axis2", help="NAME:start:stop:count (inner loop)")
    p.add_argument("--fixed", action="append", metavar="NAME=VALUE",
                   help="value for a parameter not swept; repeatable")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--report", help="write a JSON report to this path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mi", help="parallel-channel mutual information")
    _add_extent_flags(p)
    p.add_argument("--rho", type=float, default=1.0, help="SNR (linear)")
    p.add_argument("--spacing", type=float, default=None, help="bin spacing in Hz (default 1/T)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mi)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except BrokenPipeError:
        # downstream closed the pipe (e.g. `| head`); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
