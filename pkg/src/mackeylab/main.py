# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Main module of the mackeylab verification CLI."""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from time import perf_counter
from typing import Callable, Optional

from mackeylab.checks import (
    FunctorKind,
    cmd_verify_complex,
    cmd_verify_corollaries,
    cmd_verify_mackey,
    cmd_verify_maps,
    cmd_verify_theorem,
    sweep,
)
from mackeylab.collector import write_metrics
from mackeylab.exceptions import InvalidDegree
from mackeylab.report import CheckReport, dumps_all

DEFAULT_MAX_DEGREE = 32
MAX_DEGREE_ENV = "MACKEYLAB_MAX_DEGREE"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

logger = logging.getLogger(__name__)


class OutputFormat(Enum):
    """Report formats"""

    JSON = "json"
    TEXT = "text"


@dataclass(frozen=True)
class Config:
    """Wrap CLI arguments and environment variables shared by every subcommand."""

    max_degree: int
    output_format: OutputFormat
    metrics_file: Optional[Path]
    output: Optional[Path]


def setup_logging(level: str = "INFO") -> None:
    """Send the logs of every check to stderr, keeping stdout for the report.

    Args:
        level (str): name of the root log level
    """
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def positive_int(value: str) -> int:
    """argparse type for integers >= 1.

    Args:
        value (str): raw argument

    Returns:
        int: the parsed value

    Raises:
        ArgumentTypeError: if the value is not a positive integer
    """
    try:
        number = int(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer") from e
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value} must be >= 1")
    return number


def parse_command_line(args: list[str]) -> argparse.Namespace:
    """Command line parser.

    Args:
        args (list[str]): List of arguments to parse

    Returns:
        argparse.Namespace: Command line arguments.
    """
    parser = argparse.ArgumentParser(
        prog="mackeylab",
        description="Exact rational verification of rational C2-equivariant computations",
    )
    parser.add_argument(
        "--format",
        type=OutputFormat,
        choices=list(OutputFormat),
        default=OutputFormat.JSON,
        help="Report format: json or text (default: json)",
    )
    parser.add_argument(
        "--metrics-file",
        type=Path,
        default=None,
        help="Write check outcomes as a Prometheus textfile",
    )
    parser.add_argument(
        "--output", type=Path, default=None, help="Write the report to a file instead of stdout"
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default="INFO",
        help="Log level on stderr (default: INFO)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    mackey = subparsers.add_parser("verify-mackey", help="Mackey axioms and decompositions")
    mackey.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    complex_ = subparsers.add_parser("verify-complex", help="Homology of rho-suspensions")
    index = complex_.add_mutually_exclusive_group(required=True)
    index.add_argument("--i", type=positive_int, help="Multiple of rho for Z coefficients")
    index.add_argument("--m", type=positive_int, help="Multiple of rho for A coefficients")
    complex_.add_argument(
        "--functor",
        type=FunctorKind,
        choices=list(FunctorKind),
        default=None,
        help="Coefficients Z or A (default: Z with --i, A with --m)",
    )
    complex_.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    maps = subparsers.add_parser("verify-maps", help="Square, norm and Euler class maps")
    maps.add_argument("--n", type=positive_int, default=1, help="Index n (default: 1)")
    maps.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    theorem = subparsers.add_parser("verify-theorem", help="Splitting of BSU_R")
    theorem.add_argument("--n", type=positive_int, default=1, help="Index n (default: 1)")
    theorem.add_argument(
        "--max-degree",
        type=positive_int,
        default=None,
        help=f"Truncation degree (default: ${MAX_DEGREE_ENV} or {DEFAULT_MAX_DEGREE})",
    )
    theorem.add_argument("--odd", action="store_true", help="Check BSU_R(2n+1) instead")
    theorem.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    corollaries = subparsers.add_parser("verify-corollaries", help="Rho-spheres as GEMs")
    corollaries.add_argument("--n", type=positive_int, default=1, help="Index n (default: 1)")

    sweep_all = subparsers.add_parser("all", help="Every check for n = 1..3")
    sweep_all.add_argument(
        "--max-degree",
        type=positive_int,
        default=None,
        help=f"Truncation degree (default: ${MAX_DEGREE_ENV} or {DEFAULT_MAX_DEGREE})",
    )

    return parser.parse_args(args)


def build_config(args: argparse.Namespace) -> Config:
    """Merge parsed arguments with the environment.

    Args:
        args (argparse.Namespace): parsed command line

    Returns:
        Config: the run configuration

    Raises:
        InvalidDegree: if the environment holds an invalid max degree
    """
    max_degree = getattr(args, "max_degree", None)
    if max_degree is None:
        raw = os.getenv(MAX_DEGREE_ENV, str(DEFAULT_MAX_DEGREE))
        try:
            max_degree = int(raw)
        except ValueError as e:
            raise InvalidDegree(f"{MAX_DEGREE_ENV}={raw!r} is not an integer") from e
    return Config(max_degree, args.format, args.metrics_file, args.output)


def plan(args: argparse.Namespace, config: Config) -> list[Callable[[], CheckReport]]:
    """Checks to run for the parsed subcommand.

    Args:
        args (argparse.Namespace): parsed command line
        config (Config): run configuration

    Returns:
        list[Callable[[], CheckReport]]: check thunks in output order
    """
    match args.command:
        case "verify-mackey":
            return [lambda: cmd_verify_mackey(args.corrupt)]
        case "verify-complex":
            index = args.i if args.i is not None else args.m
            kind = args.functor or (FunctorKind.Z if args.i is not None else FunctorKind.A)
            return [lambda: cmd_verify_complex(kind, index, args.corrupt)]
        case "verify-maps":
            return [lambda: cmd_verify_maps(args.n, args.corrupt)]
        case "verify-theorem":
            return [
                lambda: cmd_verify_theorem(args.n, config.max_degree, args.odd, args.corrupt)
            ]
        case "verify-corollaries":
            return [lambda: cmd_verify_corollaries(args.n)]
        case _:
            return sweep(config.max_degree)


def run_checks(checks: list[Callable[[], CheckReport]]) -> list[CheckReport]:
    """Run checks in order, timing each one."""
    reports = []
    for check in checks:
        start = perf_counter()
        report = check()
        report.elapsed = perf_counter() - start
        logger.info(
            "%s %s: %s in %.2fs",
            report.check,
            report.params,
            report.status.value,
            report.elapsed,
        )
        reports.append(report)
    return reports


def emit(reports: list[CheckReport], config: Config) -> None:
    """Write the reports and the metrics textfile."""
    match config.output_format:
        case OutputFormat.TEXT:
            text = "\n".join(r.to_text() for r in reports)
        case _:
            text = dumps_all(reports)
    if config.output:
        config.output.write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")
    if config.metrics_file:
        write_metrics(reports, config.metrics_file)


def run(argv: list[str]) -> int:
    """Run the CLI and return its exit code.

    Args:
        argv (list[str]): arguments without the program name

    Returns:
        int: 0 if every check passed, 1 if one failed, 2 on a precondition error
    """
    args = parse_command_line(argv)
    try:
        config = build_config(args)
        reports = run_checks(plan(args, config))
    except InvalidDegree as e:
        logger.error("%s", e)
        return EXIT_USAGE
    emit(reports, config)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def main() -> None:
    """Enter the verification application"""
    argv = sys.argv[1:]
    setup_logging(parse_command_line(argv).log_level)
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
