"""Command-line interface.

Exit codes: 0 when every check passed, 1 when any check failed, and 2 for
configuration or output-directory problems.  Every command prints one line
per check and writes run_report.json (plus suite artifacts) to --out.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .checks import SUITES
from .config import load_config
from .errors import ConfigError
from .report import RunReport, format_check_line, write_json

COMMANDS = {
    "flow": "integrate the coefficient flow and compare against the exact solution",
    "lambda": "evaluate the eigenvalue three ways and test world-line independence",
    "stationary": "search for the stationary point and check the classical limit",
    "phase": "check the two-clock phase identity and its trajectory independence",
    "verify": "run every check family plus the negative-control meta-check",
}

# Check names (with * for swept parameters) per command, for --list.
CHECK_FAMILIES = {
    "flow": (
        "flow_accuracy[sigma2_0=*]",
        "flow_step_halving_contraction",
    ),
    "lambda": (
        "lambda_three_form_agreement",
        "lambda_worldline_independence_order",
    ),
    "stationary": (
        "stationary_duration",
        "stationary_eigenvalue",
        "curvature_degeneracy",
        "classical_limit_identity[branch=+1]",
        "classical_limit_identity[branch=-1]",
    ),
    "phase": (
        "phase_two_clock_consistency",
        "phase_trajectory_independence",
        "phase_center_identity",
    ),
}
CHECK_FAMILIES["verify"] = (
    CHECK_FAMILIES["flow"]
    + CHECK_FAMILIES["lambda"]
    + ("lambda_violation_detected",)
    + CHECK_FAMILIES["stationary"]
    + (
        "operator_exact_free",
        "operator_phase_only",
        "operator_phase_and_modulus",
        "operator_imaginary_part",
    )
    + CHECK_FAMILIES["phase"]
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="waveline",
        description="Variational checks for the free-particle action eigenvalue "
        "on discretized world lines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", default=None, metavar="PATH",
                       help="JSON configuration file")
        p.add_argument("--out", default="out", metavar="DIR",
                       help="directory for run_report.json and artifacts")
        p.add_argument("--seed", type=int, default=None,
                       help="override the random seed")
        p.add_argument("--N", type=int, default=None,
                       help="override the number of lattice intervals")
        p.add_argument("--sigma2", default=None, metavar="V[,V...]",
                       help="override the initial curvature(s), comma-separated")
        p.add_argument("--branch", default=None, choices=("+", "-", "+1", "-1"),
                       help="sign branch for the stationary point")
        p.add_argument("--list", action="store_true", dest="list_checks",
                       help="print the check names this command runs and exit")
    return parser


def _overrides_from(args):
    overrides = {"seed": args.seed, "N": args.N, "branch": args.branch}
    if args.sigma2 is not None:
        try:
            overrides["sigma2_values"] = tuple(
                float(tok) for tok in args.sigma2.split(",") if tok.strip()
            )
        except ValueError as exc:
            raise ConfigError(f"--sigma2 expects comma-separated numbers: {exc}") from exc
        if not overrides["sigma2_values"]:
            raise ConfigError("--sigma2 got an empty list")
    return overrides


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.list_checks:
        for name in CHECK_FAMILIES[args.command]:
            print(name)
        return 0

    try:
        cfg = load_config(args.config, _overrides_from(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    started = time.perf_counter()
    suite = SUITES[args.command](cfg)
    wall = time.perf_counter() - started
    report = RunReport(
        command=args.command,
        config=cfg.as_dict(),
        checks=tuple(suite.checks),
        wall_clock_s=wall,
    )

    for check in report.checks:
        print(format_check_line(check))
    n_pass = sum(c.passed for c in report.checks)
    print(
        f"{args.command}: {report.overall.upper()} "
        f"({n_pass}/{len(report.checks)} checks, {wall:.2f}s)"
    )

    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_json(out / "run_report.json", report.as_json_dict())
        suite.write_artifacts(out)
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return 2

    return 0 if report.overall == "pass" else 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
