from __future__ import annotations

import argparse
from collections.abc import Sequence

from fundsim import settings
from fundsim.core.enum import Verdict
from fundsim.exceptions import EXIT_OK, EXIT_VIOLATED, FundsimException, fundsim_exception_handler

from .commands import cmd_check, cmd_counterexample, cmd_run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fundsim",
        description="Expected log-value of fundamental against market portfolios under mean-reverting prices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="check conditions, estimate the expected log ratio and write reports")
    run.add_argument("scenario", help="path to the scenario JSON file")
    run.add_argument("--out", default=".", help="output directory (default: current directory)")
    run.add_argument("--paths", type=int, default=None, help="override mc.paths")
    run.add_argument("--seed", type=int, default=None, help="override mc.master_seed")

    counterexample = subparsers.add_parser("counterexample", help="build and evaluate the two-stock counterexample")
    counterexample.add_argument("--s", type=float, required=True, help="lattice step s > 0")
    counterexample.add_argument("--m-up", type=float, default=None, help="override M(s, 2s)")
    counterexample.add_argument("--a", type=float, default=None, help="override the level A of the second fundamental")

    check = subparsers.add_parser("check", help="run the condition checkers only")
    check.add_argument("scenario", help="path to the scenario JSON file")
    check.add_argument("--out", default=".", help="output directory (default: current directory)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        match args.command:
            case "run":
                summary = cmd_run(args.scenario, args.out, paths=args.paths, seed=args.seed)
                if Verdict.violated in summary.verdicts.values():
                    return EXIT_VIOLATED
            case "counterexample":
                cmd_counterexample(args.s, m_up=args.m_up, a=args.a)
            case "check":
                cmd_check(args.scenario, args.out)
    except FundsimException as exc:
        return fundsim_exception_handler(exc)
    return EXIT_OK
