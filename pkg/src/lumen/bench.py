"""Reproducible performance sweeps with JSON and CSV outputs.

Two sweeps matter: relation size at a fixed ring dimension (proof
bytes must stay flat) and ring dimension at a fixed relation size
(verification time must stay flat while proving grows).  Every record
carries its seed and the calibration identifier so a run can be
reproduced bit for bit.
"""

from __future__ import annotations

import csv
import json
import math
import statistics
import time
from dataclasses import asdict, dataclass

from .calibration import calibration_id
from .errors import InvalidParams
from .field import GOLDILOCKS
from .groups import test_known_order_spec
from .pcs import setup
from .piop import generate_relation, index, witness_poly
from . import snark

SCHEMA_VERSION = 1
DEFAULT_SIZES = (256, 1024, 4096, 16384)
DEFAULT_DEGREES = (256, 1024, 4096, 16384)
FIXED_DEGREE = 1 << 12
FIXED_SIZE = 8
REFERENCE_PROOF_BYTES = 1024  # aspirational target recorded in reports, not enforced


@dataclass(frozen=True)
class BenchRecord:
    sweep: str
    size: int
    d: int
    alpha: int
    proof_bytes: int
    prove_ms: float
    verify_ms: float
    reps: int
    seed: str
    calibration_id: str


def _median_times(fn, reps: int) -> float:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    return statistics.median(times)


def run_point(sweep: str, size: int, d: int, alpha: int, seed: str, reps: int) -> BenchRecord:
    pp = setup(128, d, alpha, seed.encode(), group=test_known_order_spec())
    enc = index(generate_relation(size, seed.encode() + b"/rel"))
    f = witness_poly(pp, enc)
    proof = snark.prove(pp, enc, f, seed.encode() + b"/proof")
    blob = proof.encode(pp)
    ok, _ = snark.verify_bytes(pp, enc, blob)
    if ok != 1:
        raise RuntimeError(f"bench point rejected its own proof (size={size}, d={d})")
    prove_ms = _median_times(
        lambda: snark.prove(pp, enc, f, seed.encode() + b"/proof"), reps
    )
    verify_ms = _median_times(lambda: snark.verify_bytes(pp, enc, blob), reps)
    return BenchRecord(
        sweep=sweep, size=size, d=d, alpha=alpha,
        proof_bytes=len(blob), prove_ms=round(prove_ms, 3),
        verify_ms=round(verify_ms, 3), reps=reps, seed=seed,
        calibration_id=calibration_id().hex(),
    )


def run_sweeps(
    sizes=DEFAULT_SIZES,
    degrees=DEFAULT_DEGREES,
    alpha: int = 8,
    reps: int = 5,
    seed: str = "lumen-bench",
    fixed_degree: int = FIXED_DEGREE,
    fixed_size: int = FIXED_SIZE,
) -> list[BenchRecord]:
    records = []
    for size in sizes:
        records.append(run_point("size", size, fixed_degree, alpha, seed, reps))
    for d in degrees:
        records.append(run_point("degree", fixed_size, d, alpha, seed, reps))
    return records


def _loglog_slope(points: list[tuple[int, float]]) -> float:
    # Least-squares fit of log2(time) against log2(d).
    xs = [math.log2(x) for x, _ in points]
    ys = [math.log2(max(y, 1e-9)) for _, y in points]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den if den else 0.0


def summarize(records: list[BenchRecord]) -> dict:
    """Fold a sweep into the headline measurements a report needs."""
    size_rows = [r for r in records if r.sweep == "size"]
    degree_rows = [r for r in records if r.sweep == "degree"]
    if size_rows and len({r.size for r in size_rows}) < 2:
        raise InvalidParams("size sweep needs at least two distinct sizes")
    if degree_rows and len({r.d for r in degree_rows}) < 2:
        raise InvalidParams("degree sweep needs at least two distinct dimensions")
    if not records:
        raise InvalidParams("bench report needs at least one record")
    summary: dict = {"reference_target_proof_bytes": REFERENCE_PROOF_BYTES}
    if size_rows:
        bs = [r.proof_bytes for r in size_rows]
        lo, hi = min(bs), max(bs)
        summary["proof_bytes_min"] = lo
        summary["proof_bytes_max"] = hi
        summary["proof_bytes_spread"] = round((hi - lo) / lo, 4) if lo else 0.0
    if len(degree_rows) >= 2:
        pts = [(r.d, r.verify_ms) for r in degree_rows]
        summary["verify_loglog_slope_vs_d"] = round(_loglog_slope(pts), 4)
    return summary


def write_outputs(records: list[BenchRecord], json_path: str, csv_path: str | None) -> None:
    payload = {
        "schema": SCHEMA_VERSION,
        "calibration_id": calibration_id().hex(),
        "field_modulus": GOLDILOCKS.modulus,
        "summary": summarize(records),
        "records": [asdict(r) for r in records],
    }
    with open(json_path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(asdict(records[0]).keys()))
            writer.writeheader()
            for r in records:
                writer.writerow(asdict(r))
