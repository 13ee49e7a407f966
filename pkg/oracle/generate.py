#!/usr/bin/env python3
"""Regenerate every vector suite into oracle/vectors/ (deterministic)."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

from lumen_oracle.vectors import SUITES, generate, render


def main():
    out_dir = os.path.join(os.path.dirname(__file__), "vectors")
    os.makedirs(out_dir, exist_ok=True)
    for suite in SUITES:
        data = render(generate(suite))
        path = os.path.join(out_dir, f"{suite}.json")
        with open(path, "wb") as fh:
            fh.write(data)
        print(f"wrote {path} ({len(data)} bytes)")


if __name__ == "__main__":
    main()
