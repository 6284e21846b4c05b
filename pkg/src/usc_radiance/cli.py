"""Command-line interface.

Subcommands map to scenarios (``spectrum``, ``radiance``, ``detuning``,
``map``, ``excitation``, ``parity``); ``validate`` runs the invariant
suite.  Exit code 0 on success, 1 on validation failure (including
``--strict`` runs with flagged points), 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import configparser
import sys

from .cache import SteadyStateCache
from .config import ConfigError, build_spec, load_config
from .scenarios import ScenarioError, run_scenario
from .validation import run_property_suite

__all__ = ["main"]

_SCENARIO_COMMANDS = {
    "spectrum": "lowest dressed energies versus coupling strength",
    "radiance": "radiance witness versus drive frequency",
    "detuning": "witness curves for several resonator detunings",
    "map": "peak witness values over a coupling / drive-strength grid",
    "excitation": "output flux versus drive frequency per qubit count",
    "parity": "witness with the longitudinal coupling kept versus dropped",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="usc-radiance",
        description="Collective radiance of driven qubits ultrastrongly "
        "coupled to a resonator.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, help_text in _SCENARIO_COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="run configuration file (key = value sections)")
        p.add_argument("--out", help="output directory (overrides the config)")
        p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
        p.add_argument("--plot", action="store_true", help="also write an SVG figure")
        p.add_argument(
            "--nmax-override", type=int, default=None, help="replace n_max from the config"
        )
        p.add_argument(
            "--strict",
            action="store_true",
            help="exit 1 if any point is flagged or a convergence check fails",
        )
        p.add_argument("--no-cache", action="store_true", help="disable the result cache")
    sub.add_parser("validate", help="run the invariant suite and report pass/fail")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "validate":
        failures = 0
        for check in run_property_suite():
            tag = "PASS" if check.passed else "FAIL"
            print(f"[{tag}] {check.name}: {check.detail}")
            failures += 0 if check.passed else 1
        print(f"{failures} failure(s)" if failures else "all checks passed")
        return 1 if failures else 0

    try:
        cfg = load_config(args.config) if args.config else configparser.ConfigParser()
        spec = build_spec(
            cfg, args.command, output_dir=args.out, nmax_override=args.nmax_override
        )
        cache_on = spec.extras.get("cache", True) and not args.no_cache
        cache = SteadyStateCache(enabled=cache_on)
        result = run_scenario(spec, cache=cache, threads=max(1, args.threads))
    except (ConfigError, ScenarioError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    paths = result.write_outputs(spec.output_dir, plot=args.plot)
    for path in paths:
        print(path)
    if result.flagged:
        print(f"warning: {result.flagged} flagged point(s)", file=sys.stderr)
    if not result.escalation_passed:
        print("warning: truncation escalation check failed", file=sys.stderr)
    if args.strict and (result.flagged or not result.escalation_passed):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
