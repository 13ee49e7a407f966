"""Command-line lifecycle tests.

Everything drives cli.main() in-process with explicit argv; one smoke
test goes through `python -m lumen` to pin the module entry point.
Exit codes are the contract: 0 accept, 1 reject, 2 unusable input.
"""

import json
import random
import subprocess
import sys

import pytest

from lumen.cli import main


def run_cli(*argv) -> int:
    return main(list(argv))


@pytest.fixture()
def workspace(tmp_path):
    pp = tmp_path / "pp.bin"
    rel = tmp_path / "relation.bin"
    proof = tmp_path / "proof.bin"
    assert run_cli(
        "setup", "--backend", "test", "--degree", "64", "--alpha", "4",
        "--seed", "cli-test", "--out", str(pp),
    ) == 0
    assert run_cli(
        "gen-relation", "--size", "4", "--seed", "cli-test", "--out", str(rel)
    ) == 0
    assert run_cli(
        "prove", "--pp", str(pp), "--relation", str(rel),
        "--seed", "cli-test", "--out", str(proof),
    ) == 0
    return pp, rel, proof


def test_version_prints_calibration(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli("--version")
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "calibration" in out


def test_lifecycle_accepts(workspace):
    pp, rel, proof = workspace
    assert run_cli("verify", "--pp", str(pp), "--relation", str(rel), "--proof", str(proof)) == 0


def test_verify_report_flag(workspace, capsys):
    pp, rel, proof = workspace
    assert run_cli(
        "verify", "--pp", str(pp), "--relation", str(rel),
        "--proof", str(proof), "--report",
    ) == 0
    out = capsys.readouterr().out
    assert "accept" in out
    assert "subcheck" in out


def test_bit_flip_rejects_or_malformed(workspace, tmp_path):
    pp, rel, proof = workspace
    blob = bytearray(proof.read_bytes())
    rng = random.Random(0xC11)
    # field-element region, past the headers; a flip must never exit 0
    for _ in range(6):
        pos = rng.randrange(100, len(blob))
        flipped = bytearray(blob)
        flipped[pos] ^= 1 << rng.randrange(8)
        bad = tmp_path / "bad.bin"
        bad.write_bytes(bytes(flipped))
        code = run_cli("verify", "--pp", str(pp), "--relation", str(rel), "--proof", str(bad))
        assert code in (1, 2)


def test_truncated_proof_is_malformed(workspace, tmp_path):
    pp, rel, proof = workspace
    bad = tmp_path / "short.bin"
    bad.write_bytes(proof.read_bytes()[:-9])
    assert run_cli("verify", "--pp", str(pp), "--relation", str(rel), "--proof", str(bad)) == 2


def test_missing_file_is_usage_error(workspace, tmp_path):
    pp, rel, _ = workspace
    ghost = tmp_path / "nowhere.bin"
    assert run_cli("verify", "--pp", str(pp), "--relation", str(rel), "--proof", str(ghost)) == 2


def test_wrong_relation_rejects(workspace, tmp_path):
    pp, _, proof = workspace
    other = tmp_path / "other.bin"
    assert run_cli("gen-relation", "--size", "4", "--seed", "different", "--out", str(other)) == 0
    assert run_cli("verify", "--pp", str(pp), "--relation", str(other), "--proof", str(proof)) == 1


def test_simulated_proof_verifies(workspace, tmp_path):
    pp, rel, _ = workspace
    sim = tmp_path / "sim.bin"
    assert run_cli(
        "prove", "--pp", str(pp), "--relation", str(rel),
        "--seed", "sim-run", "--simulate", "--out", str(sim),
    ) == 0
    assert run_cli("verify", "--pp", str(pp), "--relation", str(rel), "--proof", str(sim)) == 0


def test_prove_deterministic(workspace, tmp_path):
    pp, rel, proof = workspace
    again = tmp_path / "again.bin"
    assert run_cli(
        "prove", "--pp", str(pp), "--relation", str(rel),
        "--seed", "cli-test", "--out", str(again),
    ) == 0
    assert again.read_bytes() == proof.read_bytes()


def test_setup_rejects_bad_degree(tmp_path, capsys):
    code = run_cli(
        "setup", "--backend", "test", "--degree", "100", "--alpha", "4",
        "--out", str(tmp_path / "pp.bin"),
    )
    assert code == 2
    assert "setup failed" in capsys.readouterr().err


def test_audit_writes_doc_and_passes(tmp_path, capsys):
    doc_dir = tmp_path / "docs"
    assert run_cli("audit", "--sizes", "2,4", "--doc-dir", str(doc_dir)) == 0
    out = capsys.readouterr().out
    assert "calibration id:" in out
    assert "audit passed" in out
    assert list(doc_dir.glob("*.md"))


def test_bench_smoke_writes_json_and_csv(tmp_path, capsys):
    out = tmp_path / "bench.json"
    csv = tmp_path / "bench.csv"
    code = run_cli(
        "bench", "--sizes", "4,8", "--degrees", "64,128", "--alpha", "4",
        "--reps", "1", "--fixed-degree", "64", "--fixed-size", "4",
        "--out", str(out), "--csv", str(csv),
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["schema"] == 1
    assert payload["records"]
    for rec in payload["records"]:
        for key in ("size", "d", "proof_bytes", "prove_ms", "verify_ms", "seed", "calibration_id"):
            assert key in rec
    assert csv.read_text().count("\n") == len(payload["records"]) + 1


def test_bench_single_size_is_usage_error(tmp_path, capsys):
    code = run_cli(
        "bench", "--sizes", "4", "--degrees", "64", "--alpha", "4",
        "--reps", "1", "--fixed-degree", "64", "--fixed-size", "4",
        "--out", str(tmp_path / "bench.json"),
    )
    assert code == 2
    assert "usage error" in capsys.readouterr().err


def test_probe_kernel_matches_library(capsys):
    from lumen.field import GOLDILOCKS, EvaluationDomain

    query = {"probe": "kernel", "domain": 8, "x": 12345, "y": 67890}
    assert run_cli("probe", "--query", json.dumps(query)) == 0
    got = json.loads(capsys.readouterr().out)
    dom = EvaluationDomain(GOLDILOCKS, 8)
    assert got == {"value": dom.bivariate_lambda(12345, 67890)}


def test_probe_keccak_matches_library(capsys):
    from lumen.keccak import keccak256

    query = {"probe": "keccak", "hex": "616263"}
    assert run_cli("probe", "--query", json.dumps(query)) == 0
    got = json.loads(capsys.readouterr().out)
    assert got == {"digest": keccak256(b"abc").hex()}


def test_probe_batch_mode(tmp_path):
    batch = tmp_path / "queries.json"
    out = tmp_path / "answers.json"
    batch.write_text(json.dumps({"queries": [
        {"probe": "poly", "op": "mul", "a": [1, 2, 3], "b": [4, 5]},
        {"probe": "nonsense"},
        {"probe": "group", "op": "pow", "backend": "test", "base": 3, "exp": 5},
    ]}))
    assert run_cli("probe", "--batch", str(batch), "--out", str(out)) == 0
    results = json.loads(out.read_text())["results"]
    assert results[0] == {"coeffs": [4, 13, 22, 15]}
    assert "error" in results[1]
    assert results[2] == {"value": pow(3, 5, 607)}


def test_probe_output_is_canonical_json(capsys):
    query = {"probe": "poly", "op": "divrem", "a": [5, 0, 1], "b": [1, 1]}
    assert run_cli("probe", "--query", json.dumps(query)) == 0
    out = capsys.readouterr().out
    assert out == json.dumps(json.loads(out), sort_keys=True,
                             separators=(",", ":")) + "\n"


def test_probe_bad_query_is_usage_error(capsys):
    assert run_cli("probe", "--query", "{\"probe\": \"kernel\"}") == 2
    assert "usage error" in capsys.readouterr().err
    assert run_cli("probe", "--query", "not json") == 2
    assert run_cli("probe") == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "lumen", "--version"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert "calibration" in res.stdout
