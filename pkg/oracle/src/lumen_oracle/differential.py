"""Differential runner: replay vector suites against the library's CLI.

Value-level cases are posed through the CLI's batched query mode, one
subprocess per suite. Lifecycle cases (artifact files, proof round
trips, tampering) drive the ordinary subcommands in a scratch
directory. Every comparison is bit-exact except cases marked "stat",
which check a divergence threshold instead.

Exit status: 0 when every case agrees, 1 on any mismatch (the report
names each failing case), 2 for harness misuse.
"""

import argparse
import json
import os
import shlex
import subprocess
import sys
import tempfile

# cases answerable as pure value queries, batched through one process
QUERY_KINDS = {
    "kernel": "kernel",
    "poly": "poly",
    "keccak": "keccak",
    "group": "group",
    "setup_values": "setup",
    "commit_values": "commit",
    "encode": "encode",
    "witness": "witness",
}


class Failure(Exception):
    pass


def _run(cli, args, **kw):
    return subprocess.run(cli + args, capture_output=True, text=True, **kw)


def _query_payload(case):
    inputs = dict(case["inputs"])
    inputs["probe"] = QUERY_KINDS[inputs.pop("kind")]
    return inputs


def _check_query_result(case, result):
    if "error" in result and "error" not in case["expected"]:
        raise Failure(f"query failed: {result['error']}")
    if result != case["expected"]:
        raise Failure(f"expected {case['expected']!r}, got {result!r}")


def _bit_fraction(a, b):
    diff = sum(bin(x ^ y).count("1") for x, y in zip(a, b))
    return diff / (8 * max(len(a), len(b), 1))


class Lifecycle:
    """Scratch-dir driver for the file-producing subcommands."""

    def __init__(self, cli, workdir):
        self.cli = cli
        self.workdir = workdir
        self._made = {}

    def _path(self, name):
        return os.path.join(self.workdir, name)

    def ensure_setup(self, inp):
        key = ("pp", inp["degree"], inp["alpha"], inp["setup_seed"])
        if key not in self._made:
            path = self._path(f"pp-{len(self._made)}.bin")
            r = _run(self.cli, [
                "setup", "--security", "128", "--degree", str(inp["degree"]),
                "--alpha", str(inp["alpha"]), "--seed", inp["setup_seed"],
                "--backend", inp["backend"], "--out", path])
            if r.returncode != 0:
                raise Failure(f"setup failed: {r.stderr.strip()}")
            self._made[key] = path
        return self._made[key]

    def ensure_relation(self, size, seed):
        key = ("rel", size, seed)
        if key not in self._made:
            path = self._path(f"rel-{len(self._made)}.bin")
            r = _run(self.cli, [
                "gen-relation", "--size", str(size), "--seed", seed, "--out", path])
            if r.returncode != 0:
                raise Failure(f"gen-relation failed: {r.stderr.strip()}")
            self._made[key] = path
        return self._made[key]

    def prove(self, inp, out_name, seed=None, size=None, extra=()):
        pp = self.ensure_setup(inp)
        rel = self.ensure_relation(size or inp["relation_size"], inp["relation_seed"])
        path = self._path(out_name)
        r = _run(self.cli, [
            "prove", "--pp", pp, "--relation", rel,
            "--seed", seed or inp["prove_seed"], "--out", path, *extra])
        if r.returncode != 0:
            raise Failure(f"prove failed: {r.stderr.strip()}")
        return pp, rel, path

    def verify_code(self, pp, rel, proof):
        return _run(self.cli, [
            "verify", "--pp", pp, "--relation", rel, "--proof", proof]).returncode


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _write(path, data):
    with open(path, "wb") as fh:
        fh.write(data)


def _check_lifecycle(case, life):
    inp = case["inputs"]
    kind = inp["kind"]
    expected = case["expected"]

    if kind == "setup_artifact":
        spec = dict(inp, setup_seed=inp["seed"])
        blob = _read(life.ensure_setup(spec))
        if blob.hex() != expected["file_hex"]:
            raise Failure("setup artifact bytes diverge")
    elif kind == "relation_artifact":
        blob = _read(life.ensure_relation(inp["size"], inp["seed"]))
        if blob.hex() != expected["file_hex"]:
            raise Failure("relation artifact bytes diverge")
    elif kind == "verify_roundtrip":
        pp, rel, proof = life.prove(inp, "roundtrip.bin")
        code = life.verify_code(pp, rel, proof)
        if code != expected["exit_code"]:
            raise Failure(f"verify exited {code}, wanted {expected['exit_code']}")
    elif kind == "verify_simulated":
        pp, rel, proof = life.prove(inp, "sim.bin", extra=("--simulate",))
        code = life.verify_code(pp, rel, proof)
        if code != expected["exit_code"]:
            raise Failure(f"simulated verify exited {code}")
    elif kind == "verify_unmasked":
        pp, rel, proof = life.prove(inp, "plain.bin", extra=("--no-mask",))
        code = life.verify_code(pp, rel, proof)
        if code != expected["exit_code"]:
            raise Failure(f"unmasked verify exited {code}")
    elif kind == "prove_deterministic":
        _, _, first = life.prove(inp, "det-a.bin")
        _, _, second = life.prove(inp, "det-b.bin")
        same = _read(first) == _read(second)
        if same != expected["identical"]:
            raise Failure("same seed produced different proof bytes")
    elif kind == "tamper_byte":
        pp, rel, proof = life.prove(inp, f"tamper-{inp['offset_num']}.bin")
        blob = bytearray(_read(proof))
        pos = len(blob) * inp["offset_num"] // inp["offset_den"]
        blob[pos] ^= 0x40
        _write(proof, bytes(blob))
        code = life.verify_code(pp, rel, proof)
        if (code in (1, 2)) != expected["refused"]:
            raise Failure(f"tampered proof at byte {pos} exited {code}")
    elif kind == "truncate":
        pp, rel, proof = life.prove(inp, "trunc.bin")
        _write(proof, _read(proof)[: inp["keep_bytes"]])
        code = life.verify_code(pp, rel, proof)
        if code != expected["exit_code"]:
            raise Failure(f"truncated proof exited {code}")
    elif kind == "proof_size_match":
        _, _, first = life.prove(inp, "size-a.bin")
        _, _, second = life.prove(inp, "size-b.bin", size=inp["other_relation_size"])
        same = len(_read(first)) == len(_read(second))
        if same != expected["equal_sizes"]:
            raise Failure("proof sizes vary with relation size")
    elif kind in ("mask_divergence", "sim_divergence"):
        _, _, first = life.prove(inp, "div-a.bin")
        extra = ("--simulate",) if kind == "sim_divergence" else ()
        _, _, second = life.prove(inp, "div-b.bin", seed=inp["second_seed"], extra=extra)
        a, b = _read(first), _read(second)
        if (len(a) == len(b)) != expected["equal_lengths"]:
            raise Failure(f"lengths {len(a)} vs {len(b)}")
        frac = _bit_fraction(a, b)
        if frac < expected["min_bit_fraction"]:
            raise Failure(f"bit divergence {frac:.3f} below {expected['min_bit_fraction']}")
    else:
        raise Failure(f"unknown case kind {kind!r}")


def run_suite(cli, doc, workdir, report):
    """Check one suite document; returns the number of failures."""
    query_cases = [c for c in doc["cases"] if c["inputs"]["kind"] in QUERY_KINDS]
    other_cases = [c for c in doc["cases"] if c["inputs"]["kind"] not in QUERY_KINDS]
    failures = 0

    if query_cases:
        batch_path = os.path.join(workdir, f"batch-{doc['suite']}.json")
        out_path = batch_path + ".out"
        with open(batch_path, "w") as fh:
            json.dump({"queries": [_query_payload(c) for c in query_cases]}, fh)
        r = _run(cli, ["probe", "--batch", batch_path, "--out", out_path])
        if r.returncode != 0:
            report(f"FAIL {doc['suite']}: batch query run exited {r.returncode}: "
                   f"{r.stderr.strip()}")
            return len(doc["cases"])
        results = json.loads(_read(out_path))["results"]
        if len(results) != len(query_cases):
            report(f"FAIL {doc['suite']}: {len(results)} answers for "
                   f"{len(query_cases)} queries")
            return len(doc["cases"])
        for case, result in zip(query_cases, results):
            try:
                _check_query_result(case, result)
            except Failure as exc:
                failures += 1
                report(f"FAIL {case['name']}: {exc}")

    life = Lifecycle(cli, workdir)
    for case in other_cases:
        try:
            _check_lifecycle(case, life)
        except Failure as exc:
            failures += 1
            report(f"FAIL {case['name']}: {exc}")

    report(f"suite {doc['suite']}: {len(doc['cases']) - failures}/"
           f"{len(doc['cases'])} ok")
    return failures


def differential_run(cli, vector_paths, report=print):
    """Replay every suite file against the CLI; 0 of all agree, else 1."""
    total = failures = 0
    with tempfile.TemporaryDirectory(prefix="lumen-oracle-") as workdir:
        for path in vector_paths:
            with open(path) as fh:
                doc = json.load(fh)
            total += len(doc["cases"])
            failures += run_suite(cli, doc, workdir, report)
    report(f"differential run: {total - failures}/{total} cases ok")
    return 0 if failures == 0 else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="lumen-oracle-diff",
        description="replay generated vector suites against the library CLI")
    parser.add_argument("--cli", required=True,
                        help="command that runs the CLI, e.g. 'python3 -m lumen'")
    parser.add_argument("vectors", nargs="+", help="suite JSON files")
    args = parser.parse_args(argv)
    cli = shlex.split(args.cli)
    return differential_run(cli, args.vectors)


if __name__ == "__main__":
    sys.exit(main())
