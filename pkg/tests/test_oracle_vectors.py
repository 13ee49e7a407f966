"""Consume the independent oracle's vector suites, when present.

The oracle package lives under oracle/ and shares no code with this
library; these tests check the committed vectors in-process, exercise
the subprocess runner's self-test, and police the independence rule.
Everything here skips cleanly when the oracle tree is absent.
"""

import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[1]
ORACLE = REPO / "oracle"
VECTOR_FILES = sorted(ORACLE.glob("vectors/*.json"))

pytestmark = pytest.mark.skipif(
    not (ORACLE / "src" / "lumen_oracle").is_dir(),
    reason="oracle harness not present",
)


def _oracle_module(name):
    src = str(ORACLE / "src")
    if src not in sys.path:
        sys.path.insert(0, src)
    return __import__(f"lumen_oracle.{name}", fromlist=[name])


def _suite_docs():
    assert VECTOR_FILES, "oracle present but no committed vector files"
    for path in VECTOR_FILES:
        yield path, json.loads(path.read_bytes())


def test_vector_files_regenerate_identically():
    vectors = _oracle_module("vectors")
    for path, _ in _suite_docs():
        regenerated = vectors.render(vectors.generate(path.stem))
        assert regenerated == path.read_bytes(), f"{path.name} is stale"


def test_vector_schema():
    for path, doc in _suite_docs():
        assert set(doc) == {"suite", "cases"}
        assert doc["suite"] == path.stem
        for case in doc["cases"]:
            assert set(case) == {"name", "inputs", "expected", "mode"}
            assert case["mode"] in ("exact", "stat")
            assert "kind" in case["inputs"]


def test_value_cases_match_in_process():
    """Every value-level expected answer agrees with the library."""
    from lumen import probe

    differential = _oracle_module("differential")
    checked = 0
    for _, doc in _suite_docs():
        for case in doc["cases"]:
            kind = case["inputs"]["kind"]
            if kind not in differential.QUERY_KINDS:
                continue
            query = dict(case["inputs"])
            query["probe"] = differential.QUERY_KINDS[query.pop("kind")]
            got = json.loads(json.dumps(probe.answer(query)))
            assert got == case["expected"], case["name"]
            checked += 1
    assert checked > 1500


def test_runner_selftest_catches_injected_mismatch():
    selftest = _oracle_module("selftest")
    lines = []
    assert selftest.run([sys.executable, "-m", "lumen"], report=lines.append) == 0
    assert any("self-test ok" in line for line in lines)


def test_runner_flags_wrong_value_with_case_name(tmp_path):
    # corrupt one committed expected value; the runner must exit 1 and
    # say which case broke
    differential = _oracle_module("differential")
    doc = json.loads((ORACLE / "vectors" / "group.json").read_bytes())
    doc["cases"] = doc["cases"][:5]
    doc["cases"][2]["expected"]["value"] += 1
    path = tmp_path / "damaged.json"
    path.write_text(json.dumps(doc))

    lines = []
    code = differential.differential_run(
        [sys.executable, "-m", "lumen"], [str(path)], report=lines.append)
    assert code == 1
    name = doc["cases"][2]["name"]
    assert any(line.startswith(f"FAIL {name}") for line in lines)


def test_oracle_never_imports_primary():
    pattern = re.compile(r"^\s*(import|from)\s+lumen(\.|\s|$)", re.M)
    offenders = [
        str(path)
        for path in (ORACLE / "src").rglob("*.py")
        if pattern.search(path.read_text())
    ]
    assert offenders == []


def test_primary_package_untouched_by_oracle():
    # the library itself must never reach back into the oracle tree
    pattern = re.compile(r"^\s*(import|from)\s+lumen_oracle", re.M)
    offenders = [
        str(path)
        for path in (REPO / "src" / "lumen").rglob("*.py")
        if pattern.search(path.read_text())
    ]
    assert offenders == []


def test_full_differential_run_subprocess():
    r = subprocess.run(
        [sys.executable, str(ORACLE / "run_differential.py"),
         "--cli", f"{sys.executable} -m lumen", "--skip-selftest"],
        capture_output=True, text=True, cwd=str(REPO))
    assert r.returncode == 0, r.stdout + r.stderr
    assert re.search(r"differential run: (\d+)/\1 cases ok", r.stdout)
