"""Command-line front end.

Subcommands cover the whole artifact lifecycle: parameter setup,
relation generation, proving, verifying, the calibration audit, and
the benchmark sweeps.  ``verify`` exits 0 on accept, 1 on reject, and
2 when the input bytes cannot even be parsed; scripts can branch on
the code without scraping output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .calibration import audit, calibration_id
from .encoding import MalformedProof
from .errors import LumenError
from .groups import rsa_challenge_spec, test_known_order_spec
from .pcs import InvalidParams, decode_pp, setup
from .piop import (
    IndexInconsistency,
    RelationIndex,
    WitnessMismatch,
    generate_relation,
    index,
    witness_poly,
)
from . import bench as bench_mod
from . import probe as probe_mod
from . import snark


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, blob: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(blob)


def _load_pp(path: str):
    return decode_pp(_read(path))


def _load_relation(path: str) -> RelationIndex:
    return RelationIndex.decode(_read(path))


def cmd_setup(args) -> int:
    group = rsa_challenge_spec() if args.backend == "rsa" else test_known_order_spec()
    try:
        pp = setup(args.security, args.degree, args.alpha, args.seed.encode(), group=group)
    except InvalidParams as exc:
        print(f"setup failed: {exc}", file=sys.stderr)
        return 2
    _write(args.out, pp.encode())
    print(f"wrote {args.out} (degree={args.degree} alpha={args.alpha} backend={args.backend})")
    return 0


def cmd_gen_relation(args) -> int:
    rel = generate_relation(args.size, args.seed.encode())
    _write(args.out, rel.encode())
    print(f"wrote {args.out} (n={rel.n} m={rel.m} k={rel.k})")
    return 0


def cmd_prove(args) -> int:
    pp = _load_pp(args.pp)
    try:
        enc = index(_load_relation(args.relation))
    except IndexInconsistency as exc:
        print(f"relation rejected: {exc}", file=sys.stderr)
        return 2
    if args.simulate:
        proof = snark.simulate(pp, enc, args.seed.encode())
    else:
        try:
            f = witness_poly(pp, enc)
            proof = snark.prove(pp, enc, f, args.seed.encode(), zk_mask=not args.no_mask)
        except WitnessMismatch as exc:
            print(f"prove failed: {exc}", file=sys.stderr)
            return 2
    blob = proof.encode(pp)
    _write(args.out, blob)
    print(f"wrote {args.out} ({len(blob)} bytes)")
    return 0


def cmd_verify(args) -> int:
    pp = _load_pp(args.pp)
    enc = index(_load_relation(args.relation))
    try:
        ok, report = snark.verify_bytes(pp, enc, _read(args.proof))
    except MalformedProof as exc:
        print(f"malformed proof: {exc}")
        return 2
    if args.report and report is not None:
        for note in report.structural_notes:
            print(f"note: {note}")
        for name, bit in report.subchecks:
            print(f"subcheck {name}: {'pass' if bit else 'FAIL'}")
    print("accept" if ok == 1 else "reject")
    return 0 if ok == 1 else 1


def cmd_audit(args) -> int:
    sizes = tuple(int(s) for s in args.sizes.split(","))
    report = audit(sizes=sizes, write_doc=not args.no_doc, doc_dir=args.doc_dir)
    print(f"calibration id: {report.calibration.hex()}")
    for finding in report.findings:
        status = "ok" if (finding.holds and finding.rejected_disagree) else "MISMATCH"
        print(f"  {finding.identity}: resolved={finding.resolved} [{status}]")
    print(f"proof checks: {report.proofs_accepted}/{report.proofs_total}")
    if not report.ok():
        print("audit FAILED", file=sys.stderr)
        return 1
    print("audit passed")
    return 0


def cmd_bench(args) -> int:
    sizes = tuple(int(s) for s in args.sizes.split(","))
    degrees = tuple(int(s) for s in args.degrees.split(","))
    records = bench_mod.run_sweeps(
        sizes=sizes, degrees=degrees, alpha=args.alpha, reps=args.reps,
        seed=args.seed, fixed_degree=args.fixed_degree, fixed_size=args.fixed_size,
    )
    bench_mod.write_outputs(records, args.out, args.csv)
    for r in records:
        print(
            f"{r.sweep:>6} size={r.size:<4} d={r.d:<6} bytes={r.proof_bytes:<6}"
            f" prove={r.prove_ms:>9.2f}ms verify={r.verify_ms:>8.2f}ms"
        )
    print(f"wrote {args.out}" + (f" and {args.csv}" if args.csv else ""))
    return 0


def _canon_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cmd_probe(args) -> int:
    if (args.query is None) == (args.batch is None):
        print("usage error: pass exactly one of --query or --batch", file=sys.stderr)
        return 2
    if args.query is not None:
        try:
            query = json.loads(args.query)
        except json.JSONDecodeError as exc:
            print(f"usage error: query is not JSON: {exc}", file=sys.stderr)
            return 2
        try:
            print(_canon_json(probe_mod.answer(query)))
        except (LumenError, ValueError, ZeroDivisionError) as exc:
            print(f"usage error: {exc}", file=sys.stderr)
            return 2
        return 0
    with open(args.batch, "r") as fh:
        batch = json.load(fh)
    queries = batch.get("queries") if isinstance(batch, dict) else None
    if not isinstance(queries, list):
        print('usage error: batch file must hold {"queries": [...]}', file=sys.stderr)
        return 2
    results = []
    for query in queries:
        try:
            results.append(probe_mod.answer(query))
        except (LumenError, ValueError, ZeroDivisionError) as exc:
            results.append({"error": str(exc)})
    payload = _canon_json({"results": results})
    if args.out:
        _write(args.out, payload.encode() + b"\n")
        print(f"wrote {args.out} ({len(results)} results)")
    else:
        print(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lumen", description=__doc__)
    parser.add_argument(
        "--version", action="version",
        version=f"lumen calibration {calibration_id().hex()}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("setup", help="derive public parameters")
    p.add_argument("--security", type=int, default=128)
    p.add_argument("--degree", type=int, default=1024, help="ring dimension, power of two")
    p.add_argument("--alpha", type=int, default=8, help="trace length, power of two")
    p.add_argument("--seed", default="lumen")
    p.add_argument("--backend", choices=("rsa", "test"), default="rsa")
    p.add_argument("--out", default="pp.bin")
    p.set_defaults(fn=cmd_setup)

    p = sub.add_parser("gen-relation", help="generate a satisfiable demo relation")
    p.add_argument("--size", type=int, default=8)
    p.add_argument("--seed", default="lumen")
    p.add_argument("--out", default="relation.bin")
    p.set_defaults(fn=cmd_gen_relation)

    p = sub.add_parser("prove", help="produce a proof for a relation")
    p.add_argument("--pp", default="pp.bin")
    p.add_argument("--relation", default="relation.bin")
    p.add_argument("--seed", default="lumen")
    p.add_argument("--simulate", action="store_true", help="emit a witness-free simulated proof")
    p.add_argument("--no-mask", action="store_true", help="disable zero-knowledge masking")
    p.add_argument("--out", default="proof.bin")
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("verify", help="check a proof; exit 0 accept, 1 reject, 2 malformed")
    p.add_argument("--pp", default="pp.bin")
    p.add_argument("--relation", default="relation.bin")
    p.add_argument("--proof", default="proof.bin")
    p.add_argument("--report", action="store_true", help="print per-subcheck outcomes")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("audit", help="run the calibration audit and write the conformance doc")
    p.add_argument("--sizes", default="2,4,8")
    p.add_argument("--doc-dir", default="docs")
    p.add_argument("--no-doc", action="store_true")
    p.set_defaults(fn=cmd_audit)

    p = sub.add_parser(
        "probe",
        help="answer deterministic value queries (JSON in, JSON out) for "
             "external differential harnesses",
    )
    p.add_argument("--query", default=None, help="one JSON query object")
    p.add_argument("--batch", default=None,
                   help='JSON file {"queries": [...]}; answers them all')
    p.add_argument("--out", default=None, help="write batch results here instead of stdout")
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("bench", help="run size and degree sweeps")
    p.add_argument("--sizes", default=",".join(str(s) for s in bench_mod.DEFAULT_SIZES))
    p.add_argument("--degrees", default=",".join(str(d) for d in bench_mod.DEFAULT_DEGREES))
    p.add_argument("--alpha", type=int, default=8)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", default="lumen-bench")
    p.add_argument("--fixed-degree", type=int, default=bench_mod.FIXED_DEGREE)
    p.add_argument("--fixed-size", type=int, default=bench_mod.FIXED_SIZE)
    p.add_argument("--out", default="bench.json")
    p.add_argument("--csv", default=None)
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"missing file: {exc.filename}", file=sys.stderr)
        return 2
    except MalformedProof as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 2
    except InvalidParams as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
