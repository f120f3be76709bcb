#!/usr/bin/env python3
"""
Test runner for Moduli Desk.

Usage:
    python run_tests.py                 # everything
    python run_tests.py --unit          # unit tests only
    python run_tests.py --integration   # command-line tests only
    python run_tests.py --coverage      # with a coverage report for src/
"""
import argparse
import sys

import pytest


def main():
    parser = argparse.ArgumentParser(description="Run the Moduli Desk test suite")
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--unit', action='store_true', help='Run unit tests only')
    group.add_argument('--integration', action='store_true', help='Run integration tests only')
    parser.add_argument('--coverage', action='store_true', help='Report coverage of src/')
    parser.add_argument('--fast', action='store_true', help='Skip tests marked slow')
    args, extra = parser.parse_known_args()

    pytest_args = []
    if args.unit:
        pytest_args.append('tests/unit')
    elif args.integration:
        pytest_args.append('tests/integration')
    if args.fast:
        pytest_args += ['-m', 'not slow']
    if args.coverage:
        pytest_args += ['--cov=src', '--cov-report=term-missing']
    pytest_args += extra

    print(f"Running: pytest {' '.join(pytest_args)}")
    return pytest.main(pytest_args)


if __name__ == '__main__':
    sys.exit(main())
