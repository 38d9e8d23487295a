#!/usr/bin/env python3
"""
Run the radialrep unit tests.

    python tests/run_tests.py -v --coverage -k modulus
    python tests/run_tests.py --profile ci
"""

import argparse
import os
import subprocess
import sys

TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
TEST_REQUIREMENTS = os.path.join(TESTS_DIR, "requirements.txt")


def ensure_test_dependencies() -> None:
    try:
        import hypothesis  # noqa: F401
        import pytest  # noqa: F401
        import pytest_asyncio  # noqa: F401
    except ImportError:
        print("Installing test dependencies...")
        subprocess.run([sys.executable, "-m", "pip", "install", "-r", TEST_REQUIREMENTS], check=True)


def build_command(verbose=False, coverage=False, keyword=None, profile=None, paths=None):
    cmd = [sys.executable, "-m", "pytest"]
    if verbose:
        cmd.append("-v")
    if coverage:
        cmd.extend(["--cov=radialrep", "--cov-report=term-missing", "--cov-report=html"])
    if keyword:
        cmd.extend(["-k", keyword])
    if profile:
        cmd.append(f"--hypothesis-profile={profile}")
    cmd.extend(paths or [os.path.join(TESTS_DIR, "unit")])
    return cmd


def main():
    parser = argparse.ArgumentParser(description="Run radialrep unit tests")
    parser.add_argument("-v", "--verbose", action="store_true", help="Verbose output")
    parser.add_argument("--coverage", action="store_true", help="Run with coverage reporting")
    parser.add_argument("-k", dest="keyword", help="Only run tests matching the pytest keyword expression")
    parser.add_argument("--profile", choices=["dev", "ci"], help="Hypothesis settings profile")
    parser.add_argument("paths", nargs="*", help="Test files or directories (default: tests/unit)")
    args = parser.parse_args()

    ensure_test_dependencies()
    cmd = build_command(args.verbose, args.coverage, args.keyword, args.profile, args.paths)
    return subprocess.run(cmd).returncode


if __name__ == "__main__":
    sys.exit(main())
