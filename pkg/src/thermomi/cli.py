"""Command-line front end.

Two subcommands: "sweep" evaluates every requested route over the config's
beta grid and writes a JSON report (optionally CSV and figures); "verify"
runs the self-consistency checks and fails loudly when any of them does.

Exit codes: 0 success, 1 verify found a failing check, 2 bad configuration
or arguments, 3 a numerical routine could not produce a trustworthy value.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import boltzmann
from ._version import __version__
from .checks import run_verify
from .config import load_config
from .sweep import parse_routes, run_sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermomi",
        description="Mutual information of an additive Gaussian-noise channel, "
        "computed thermodynamically and cross-checked.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate all routes over the beta grid")
    sweep.add_argument("--config", required=True, help="JSON config file")
    sweep.add_argument("--out", required=True, help="JSON report path")
    sweep.add_argument("--csv", help="also write a CSV table here")
    sweep.add_argument(
        "--routes",
        help="comma-separated subset of thermo,classical,gsv (default: all that apply)",
    )
    sweep.add_argument("--jobs", type=int, default=1, help="grid points computed in parallel")
    sweep.add_argument("--figures", help="directory to render PNG figures into")
    sweep.add_argument(
        "--reproducible",
        action="store_true",
        help="zero the per-record wall times so reruns are byte identical",
    )

    verify = sub.add_parser("verify", help="run the self-consistency checks")
    verify.add_argument("--config", required=True, help="JSON config file")
    verify.add_argument(
        "--routes",
        help="comma-separated subset of thermo,classical,gsv (default: all that apply)",
    )
    return parser


def cmd_sweep(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    routes = parse_routes(args.routes, config.prior)
    if "classical" in routes and boltzmann.beta_dependent_energy(config.prior):
        print(
            "note: the classical route diverges for this prior; "
            "reported values use the truncated integral",
            file=sys.stderr,
        )
    report = run_sweep(config, routes, jobs=args.jobs, reproducible=args.reproducible)
    report.write_json(args.out)
    print(f"wrote {args.out} ({len(report.records)} records, routes: {', '.join(routes)})")
    if args.csv:
        report.write_csv(args.csv)
        print(f"wrote {args.csv}")
    if args.figures:
        for path in render_figures(report, args.figures):
            print(f"wrote {path}")
    return 0


def render_figures(report, outdir: str) -> list[Path]:
    # Imported lazily so sweeps without --figures never touch matplotlib.
    from .plots import render_sweep_figures

    return render_sweep_figures(report, outdir)


def cmd_verify(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    routes = parse_routes(args.routes, config.prior)
    results = run_verify(config, routes)
    for result in results:
        print(result.line())
    failures = sum(1 for r in results if not r.passed)
    if failures:
        print(f"{failures} of {len(results)} checks failed")
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return cmd_sweep(args)
        return cmd_verify(args)
    except ValueError as exc:
        # ConfigError and the argument guards land here: the inputs are
        # wrong, not the numerics.
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
