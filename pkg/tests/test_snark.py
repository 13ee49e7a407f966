"""Compiled argument unit tests: wire format, determinism, rejection."""

import random

import pytest

from lumen import snark
from lumen.calibration import calibration_id
from lumen.errors import MalformedProof
from lumen.field import GOLDILOCKS
from lumen.piop import generate_relation, index, witness_poly

F = GOLDILOCKS


def test_honest_proof_accepts(pp_small, relation_small, proven_small):
    _, proof, blob = proven_small
    ok, report = snark.verify(pp_small, relation_small, proof)
    assert ok == 1
    assert report.accepted == 1
    ok2, _ = snark.verify_bytes(pp_small, relation_small, blob)
    assert ok2 == 1


def test_proof_bytes_deterministic(pp_small, relation_small):
    f = witness_poly(pp_small, relation_small)
    b1 = snark.prove(pp_small, relation_small, f, b"det").encode(pp_small)
    b2 = snark.prove(pp_small, relation_small, f, b"det").encode(pp_small)
    b3 = snark.prove(pp_small, relation_small, f, b"det2").encode(pp_small)
    assert b1 == b2
    assert b1 != b3  # seed moves the masking, so bytes move too


def test_codec_round_trip_identity(pp_small, relation_small, proven_small):
    # decode(encode(proof)) re-encodes to the identical byte string
    _, proof, blob = proven_small
    back = snark.Proof.decode(pp_small, blob)
    assert back.encode(pp_small) == blob


def test_codec_round_trip_many_seeds(pp_tiny):
    enc = index(generate_relation(2, b"rt-rel"))
    f = witness_poly(pp_tiny, enc)
    for i in range(40):
        blob = snark.prove(pp_tiny, enc, f, b"rt-%d" % i).encode(pp_tiny)
        assert snark.Proof.decode(pp_tiny, blob).encode(pp_tiny) == blob


def test_proof_carries_identities(pp_small, relation_small, proven_small):
    _, proof, _ = proven_small
    assert proof.calibration == calibration_id()
    assert proof.relation_digest == relation_small.digest()
    assert proof.pp_digest == pp_small.digest()


def test_verify_rejects_foreign_relation(pp_small, proven_small):
    _, _, blob = proven_small
    other = index(generate_relation(8, b"foreign"))
    ok, _ = snark.verify_bytes(pp_small, other, blob)
    assert ok == 0


def test_verify_rejects_foreign_params(pp_mid, relation_small, proven_small):
    _, _, blob = proven_small
    with pytest.raises(MalformedProof):
        # alpha differs, so the wire layout cannot even parse cleanly
        snark.verify_bytes(pp_mid, relation_small, blob)


def test_malformed_wire_raises(pp_small, relation_small, proven_small):
    _, _, blob = proven_small
    with pytest.raises(MalformedProof):
        snark.verify_bytes(pp_small, relation_small, blob[:-5])
    with pytest.raises(MalformedProof):
        snark.verify_bytes(pp_small, relation_small, b"JUNK" + blob[4:])
    with pytest.raises(MalformedProof):
        snark.verify_bytes(pp_small, relation_small, blob + b"\x00")


def test_bit_flips_never_accept(pp_small, relation_small, proven_small):
    # every single-bit corruption must either reject or raise, never pass
    _, _, blob = proven_small
    rng = random.Random(0xF11B)
    for _ in range(60):
        pos = rng.randrange(len(blob))
        bit = 1 << rng.randrange(8)
        bad = bytearray(blob)
        bad[pos] ^= bit
        try:
            ok, _ = snark.verify_bytes(pp_small, relation_small, bytes(bad))
        except MalformedProof:
            continue
        assert ok == 0, f"accepted corrupted byte {pos}"


def test_verify_is_read_only(pp_small, relation_small, proven_small):
    _, _, blob = proven_small
    before_pp = pp_small.encode()
    before_rel = relation_small.relation.encode()
    snark.verify_bytes(pp_small, relation_small, blob)
    assert pp_small.encode() == before_pp
    assert relation_small.relation.encode() == before_rel


def test_simulator_never_sees_witness(pp_small, relation_small):
    import inspect

    sig = inspect.signature(snark.simulate)
    assert "f" not in sig.parameters
    assert "witness" not in sig.parameters


def test_simulated_proofs_verify_and_match_shape(pp_small, relation_small, proven_small):
    _, _, real_blob = proven_small
    sim = snark.simulate(pp_small, relation_small, b"sim-seed")
    sim_blob = sim.encode(pp_small)
    assert len(sim_blob) == len(real_blob)
    ok, _ = snark.verify_bytes(pp_small, relation_small, sim_blob)
    assert ok == 1


def test_final_tag_binds_transcript_end(pp_small, relation_small, proven_small):
    import dataclasses

    _, proof, _ = proven_small
    bad = dataclasses.replace(proof, final_tag=proof.final_tag ^ 1)
    ok, _ = snark.verify(pp_small, relation_small, bad)
    assert ok == 0
