"""Drive the command-line surface the way an external tool would.

Everything here goes through `python -m lumen` subprocesses and files
on disk; no library imports. This is the exact integration surface a
separate harness or CI job gets: artifacts in, exit codes out.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def run(workdir, *args):
    cmd = [sys.executable, "-m", "lumen", *args]
    r = subprocess.run(cmd, cwd=workdir, capture_output=True, text=True)
    label = " ".join(args[:1]) or "?"
    print(f"$ lumen {' '.join(args)}")
    for line in (r.stdout + r.stderr).strip().splitlines():
        print(f"    {line}")
    print(f"    exit {r.returncode}")
    return r


def main():
    with tempfile.TemporaryDirectory() as wd:
        wd = Path(wd)
        run(wd, "--version")
        run(wd, "setup", "--backend", "test", "--degree", "64",
            "--alpha", "4", "--seed", "demo-05", "--out", "pp.bin")
        run(wd, "gen-relation", "--size", "8", "--seed", "demo-05",
            "--out", "relation.bin")
        run(wd, "prove", "--pp", "pp.bin", "--relation", "relation.bin",
            "--seed", "demo-05", "--out", "proof.bin")
        print(f"    proof.bin is {(wd / 'proof.bin').stat().st_size} bytes")
        run(wd, "verify", "--pp", "pp.bin", "--relation", "relation.bin",
            "--proof", "proof.bin", "--report")

        # truncated artifact: exit 2 means unusable input, not a mere reject
        blob = (wd / "proof.bin").read_bytes()
        (wd / "short.bin").write_bytes(blob[:40])
        run(wd, "verify", "--pp", "pp.bin", "--relation", "relation.bin",
            "--proof", "short.bin")

        run(wd, "audit", "--sizes", "2,4", "--no-doc")

        r = run(wd, "bench", "--sizes", "4,8", "--degrees", "16,32",
                "--alpha", "4", "--reps", "1", "--out", "bench.json",
                "--csv", "bench.csv")
        if r.returncode == 0:
            recs = json.loads((wd / "bench.json").read_text())["records"]
            print(f"    bench wrote {len(recs)} records; "
                  f"fields: {sorted(recs[0])}")


if __name__ == "__main__":
    main()
