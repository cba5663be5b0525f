"""Command-line interface.

Subcommands: sweep, summarize, slope, calibrate, verify-ae, bounds.
Exit codes: 0 success, 1 configuration error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import bound_report
from .estimators import calibrate_constants
from .harness import (
    ConfigError,
    SweepConfig,
    fit_loglog_slope,
    load_profile_spec,
    read_csv,
    run_sweep,
    summarize,
    verify_ae,
    write_csv,
)
from .rng import RandomSource

_DEFAULT_CAL_GRID = (1e-4, 1e-3, 1e-2, 1e-1, 0.5)


def _cmd_sweep(args) -> int:
    with open(args.config) as fh:
        config = SweepConfig.from_dict(json.load(fh))
    with open(args.out, "w", newline="") as out:
        write_csv(run_sweep(config), out)
    return 0


def _cmd_summarize(args) -> int:
    with open(args.infile) as fh:
        rows = read_csv(fh)
    profile = load_profile_spec(args.profile) if args.profile else None
    records = summarize(rows, bound=args.bound, profile=profile)
    cols = ["estimator", "distribution", "n", "epsilon", "delta", "p", "trials",
            "mean_abs_error", "p90_abs_error", "failure_rate", "bound",
            "mean_oracle", "mean_aa"]
    print("\t".join(cols))
    for rec in records:
        print("\t".join("" if rec[c] is None else str(rec[c]) for c in cols))
    return 0


def _cmd_slope(args) -> int:
    with open(args.infile) as fh:
        rows = read_csv(fh)
    groups: dict[tuple, list] = {}
    for row in rows:
        groups.setdefault((row.n, row.epsilon, row.delta, row.p), []).append(row)
    points = []
    import numpy as np

    for members in groups.values():
        x = np.mean([getattr(m, args.x) for m in members])
        errs = [getattr(m, args.y) for m in members]
        y = float(np.percentile(errs, args.percentile))
        points.append((x, y))
    print(f"{fit_loglog_slope(points):.6f}")
    return 0


def _cmd_calibrate(args) -> int:
    grid = [float(g) for g in args.grid.split(",")] if args.grid else list(_DEFAULT_CAL_GRID)
    profile = calibrate_constants(grid, args.trials, RandomSource(args.seed))
    with open(args.out, "w") as fh:
        fh.write(profile.to_json())
        fh.write("\n")
    print(f"wrote {args.out}")
    return 0


def _cmd_verify_ae(args) -> int:
    report = verify_ae(args.max_m)
    print(f"cases: {len(report['cases'])}")
    print(f"max total-variation distance: {report['max_tv']:.3e}")
    return 0 if report["max_tv"] <= 1e-9 else 2


def _cmd_bounds(args) -> int:
    parts = args.instance.split(":")
    kind, params = parts[0], parts[1:]
    if kind == "hard-statebased" and len(params) == 2:
        from .dist import hard_instance_statebased

        p0, p1, _ = hard_instance_statebased(float(params[0]), float(params[1]))
    elif kind == "hard-subgaussian" and len(params) == 2:
        from .dist import hard_instance_subgaussian

        p0, p1 = hard_instance_subgaussian(float(params[0]), float(params[1]))
    else:
        raise ConfigError(f"unknown instance {args.instance!r}")
    rep = bound_report(p0, p1, args.delta, args.t)
    print(f"kl\t{rep.kl:.6f}")
    print(f"fidelity\t{rep.fidelity:.6f}")
    print(f"helstrom_success\t{rep.helstrom_success:.6f}")
    print(f"t_lower\t{rep.t_lower}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmeansim",
        description="Benchmark harness for simulated quantum mean estimation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a sweep config and write CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("summarize", help="aggregate a sweep CSV to TSV on stdout")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--bound", choices=("auto", "none"), default="auto")
    p.add_argument("--profile", default=None)
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("slope", help="log-log slope of error against cost")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--x", default="oracle_experiments")
    p.add_argument("--y", default="abs_error")
    p.add_argument("--percentile", type=float, default=90.0)
    p.set_defaults(func=_cmd_slope)

    p = sub.add_parser("calibrate", help="measure constants, write a profile")
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--out", required=True)
    p.add_argument("--grid", default=None, help="comma-separated tail probabilities")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("verify-ae", help="validate the estimation kernel")
    p.add_argument("--max-m", type=int, default=32)
    p.set_defaults(func=_cmd_verify_ae)

    p = sub.add_parser("bounds", help="distinguishability bounds for an instance pair")
    p.add_argument("--instance", required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(func=_cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:  # console-script shim
    raise SystemExit(main())
