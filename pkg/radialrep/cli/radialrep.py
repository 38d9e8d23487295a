#!/usr/bin/env python3
"""
Command-line interface for radialrep.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Ensure the radialrep package is in the Python path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from radialrep.catalog import list_entries
from radialrep.main import effective_config, init_components, prepare_run_directory, run_problem, run_suite
from radialrep.runner.statements import list_statements
from radialrep.runner.verification_manager import EXIT_SPEC_ERROR

logger = logging.getLogger(__name__)


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _seed(value: str) -> int:
    n = int(value)
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer, got {value}")
    return n


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", "-o", help="Output directory (default: a timestamped directory under runner.output_dir)")
    parser.add_argument("--config", "-c", help="YAML/JSON file overriding the default configuration")
    parser.add_argument("--seed", type=_seed, help="Override the seed of every problem")
    parser.add_argument("--threads", type=_positive_int, help="Number of worker threads")
    parser.add_argument("--resolution-scale", type=_positive_int, default=1, help="Multiply every sample count")
    parser.add_argument("--no-progress", action="store_true", help="Disable the progress bar")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")


def print_listing() -> None:
    print("Statements:")
    for statement_id in list_statements():
        print(f"  {statement_id}")
    for kind, names in list_entries().items():
        print(f"{kind.replace('_', ' ').capitalize()}:")
        for name in names:
            print(f"  {name}")


def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point for the radialrep CLI."""
    parser = argparse.ArgumentParser(description="radialrep CLI")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    run_parser = subparsers.add_parser("run", help="Verify one problem")
    run_parser.add_argument("--spec", required=True, help="Path to a JSON problem file")
    _add_run_options(run_parser)

    suite_parser = subparsers.add_parser("suite", help="Verify every problem of a suite")
    suite_parser.add_argument("--suite", required=True, help="Path to a YAML/JSON suite file")
    _add_run_options(suite_parser)

    subparsers.add_parser("list", help="List statement ids and catalog entries")

    args = parser.parse_args(argv)

    if args.command == "list":
        print_listing()
        sys.exit(0)

    if args.command not in ("run", "suite"):
        parser.print_help()
        sys.exit(EXIT_SPEC_ERROR)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s"
    )

    try:
        config = effective_config(args.config)
        run_dir = prepare_run_directory(config, args.out, args.verbose)
        controller = init_components(
            config,
            run_dir,
            threads=args.threads,
            seed=args.seed,
            resolution_scale=args.resolution_scale,
            show_progress=not args.no_progress,
        )
        if args.command == "run":
            code = run_problem(args.spec, controller)
        else:
            code = asyncio.run(run_suite(args.suite, controller))
    except Exception as e:
        logger.error(f"Error running radialrep: {str(e)}", exc_info=args.verbose)
        sys.exit(EXIT_SPEC_ERROR)

    sys.exit(code)


if __name__ == "__main__":
    main()
