#!/usr/bin/env python3
"""
radialrep: numerical verification of radial representations of lower
semicontinuous envelopes.

Main entry point: builds the runner components from a configuration and runs
one problem or a suite.
"""

import logging
import os
from typing import Any, Dict, Optional

from radialrep.core.errors import ProblemSpecError
from radialrep.core.utils import create_run_directory, load_config, load_default_config, merge_config, save_config, setup_logging
from radialrep.runner.controller import SuiteController, load_suite
from radialrep.runner.problem import load_problem
from radialrep.runner.report_store import ReportStore
from radialrep.runner.verification_manager import EXIT_SPEC_ERROR, VerificationManager

logger = logging.getLogger(__name__)


def effective_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """Packaged defaults, overridden by a user YAML/JSON file when given."""
    config = load_default_config()
    if config_path:
        config = merge_config(config, load_config(config_path))
    return config


def prepare_run_directory(config: Dict[str, Any], out_dir: Optional[str], verbose: bool = False) -> str:
    """
    Use `out_dir` as given, or a fresh timestamped directory under runner.output_dir.

    Installs file logging there and saves the effective configuration.
    """
    if out_dir:
        run_dir = out_dir
        os.makedirs(run_dir, exist_ok=True)
    else:
        run_dir = create_run_directory(config.get("runner", {}).get("output_dir", "./results"), run_prefix="radialrep_run")
    setup_logging(
        log_dir=run_dir,
        log_level=logging.DEBUG,
        console_level=logging.DEBUG if verbose else logging.INFO,
    )
    save_config(config, os.path.join(run_dir, "config.yaml"))
    return run_dir


def init_components(
    config: Dict[str, Any],
    run_dir: str,
    threads: Optional[int] = None,
    seed: Optional[int] = None,
    resolution_scale: int = 1,
    show_progress: bool = True,
) -> SuiteController:
    """
    Initialize the runner components.

    Args:
        config: Effective configuration
        run_dir: Directory for reports and summary.csv
        threads: Worker count (defaults to runner.max_workers)
        seed: Seed override for every problem
        resolution_scale: Multiplies every sample count

    Returns:
        Initialized SuiteController
    """
    runner_config = config.get("runner", {})
    manager = VerificationManager(
        config=config,
        max_workers=threads or runner_config.get("max_workers", 4),
        seed=seed,
        resolution_scale=resolution_scale,
    )
    store = ReportStore(run_dir)
    return SuiteController(manager, store, show_progress=show_progress and runner_config.get("progress", True))


def run_problem(spec_path: str, controller: SuiteController) -> int:
    """Verify one problem file; returns its exit code."""
    try:
        spec = load_problem(spec_path)
    except ProblemSpecError as e:
        logger.error(f"Invalid problem {spec_path}: {e}")
        return EXIT_SPEC_ERROR
    try:
        outcome = controller.run_one(spec)
    finally:
        controller.manager.cleanup()
    logger.info(f"Reports written to {controller.store.reports_dir}")
    return outcome.exit_code


async def run_suite(suite_path: str, controller: SuiteController) -> int:
    """Verify every problem of a suite file; returns the worst exit code."""
    try:
        entries = load_suite(suite_path)
    except ProblemSpecError as e:
        logger.error(f"Invalid suite {suite_path}: {e}")
        return EXIT_SPEC_ERROR
    try:
        worst, _ = await controller.run_suite(entries)
    finally:
        controller.manager.cleanup()
    return worst
