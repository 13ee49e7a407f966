#!/usr/bin/env python3
"""Replay the committed vector suites against the CLI, then self-test.

Usage: python3 oracle/run_differential.py [--cli "python3 -m lumen"]
"""

import argparse
import glob
import os
import shlex
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

from lumen_oracle import differential, selftest


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cli", default="python3 -m lumen")
    parser.add_argument("--skip-selftest", action="store_true")
    args = parser.parse_args()

    cli = shlex.split(args.cli)
    vectors = sorted(glob.glob(
        os.path.join(os.path.dirname(__file__), "vectors", "*.json")))
    if not vectors:
        print("no vector files; run oracle/generate.py first", file=sys.stderr)
        return 2

    code = differential.differential_run(cli, vectors)
    if code == 0 and not args.skip_selftest:
        code = selftest.run(cli)
    return code


if __name__ == "__main__":
    sys.exit(main())
