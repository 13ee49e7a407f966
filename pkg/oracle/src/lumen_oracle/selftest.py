"""Harness self-test: prove the runner actually catches disagreement.

Copies a generated suite, corrupts one expected value, and replays the
damaged file. The run must report failure (exit 1) and must name the
damaged case; a harness that stays green here cannot be trusted to
stay green anywhere.
"""

import copy
import json
import os
import sys
import tempfile

from .differential import differential_run
from .vectors import generate, render


def _damage(doc, index):
    doc = copy.deepcopy(doc)
    case = doc["cases"][index]
    expected = case["expected"]
    key = sorted(expected)[0]
    value = expected[key]
    if isinstance(value, int):
        expected[key] = value + 1
    elif isinstance(value, str):
        expected[key] = ("00" if not value else value[2:] + value[:2])
        if expected[key] == value:
            expected[key] = value + "00"
    elif isinstance(value, list):
        expected[key] = value + [1]
    elif isinstance(value, bool):
        expected[key] = not value
    else:
        expected[key] = 12345
    return doc, case["name"]


def run(cli, report=print):
    """0 when the injected mismatch is caught and named, 1 otherwise."""
    doc = generate("keccak")
    doc["cases"] = doc["cases"][:3]
    damaged, name = _damage(doc, 1)

    lines = []
    with tempfile.TemporaryDirectory(prefix="lumen-oracle-selftest-") as tmp:
        path = os.path.join(tmp, "damaged.json")
        with open(path, "wb") as fh:
            fh.write(render(damaged))
        code = differential_run(cli, [path], report=lines.append)

    named = any(name in line and line.startswith("FAIL") for line in lines)
    if code == 1 and named:
        report(f"self-test ok: injected mismatch in {name!r} was caught")
        return 0
    report(f"self-test FAILED: exit {code}, case named: {named}")
    for line in lines:
        report(f"  | {line}")
    return 1


def main(argv=None):
    import argparse
    import shlex

    parser = argparse.ArgumentParser(
        prog="lumen-oracle-selftest",
        description="verify the differential runner catches an injected mismatch")
    parser.add_argument("--cli", required=True,
                        help="command that runs the CLI, e.g. 'python3 -m lumen'")
    args = parser.parse_args(argv)
    return run(shlex.split(args.cli))


if __name__ == "__main__":
    sys.exit(main())
