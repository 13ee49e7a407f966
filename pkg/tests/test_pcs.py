"""Commitment scheme unit tests: lifecycle, binding, serialization."""

import random

import pytest

from lumen.errors import InvalidParams, MalformedProof
from lumen.field import GOLDILOCKS
from lumen.groups import rsa_challenge_spec
from lumen.groups import test_known_order_spec as known_order_spec
from lumen.keccak import keccak256
from lumen.pcs import (
    Commitment,
    absorb_commitment,
    build_verify_poly_trace,
    commit,
    decode_pp,
    eval_prove,
    eval_verify,
    open_commitment,
    setup,
    simulate_eval,
    simulate_trace,
    verify_poly,
)
from lumen.poly import Poly
from lumen.transcript import KeccakRng, Transcript

F = GOLDILOCKS


def fresh_transcript(pp):
    t = Transcript(b"test/pcs")
    t.absorb(b"pp", pp.digest())
    return t


def random_poly(rng, d):
    return Poly(F, [rng.randrange(F.modulus) for _ in range(d)])


def test_setup_is_seed_deterministic():
    a = setup(128, 64, 4, b"seed-a", group=known_order_spec())
    b = setup(128, 64, 4, b"seed-a", group=known_order_spec())
    c = setup(128, 64, 4, b"seed-b", group=known_order_spec())
    assert a.encode() == b.encode()
    assert a.encode() != c.encode()
    assert a.digest() == keccak256(a.encode())


def test_setup_parameter_validation():
    g = known_order_spec()
    with pytest.raises(InvalidParams):
        setup(128, 48, 4, b"s", group=g)  # not a power of two
    with pytest.raises(InvalidParams):
        setup(128, 0, 4, b"s", group=g)
    with pytest.raises(InvalidParams):
        setup(128, 64, 0, b"s", group=g)
    with pytest.raises(InvalidParams):
        setup(0, 64, 4, b"s", group=g)


def test_pp_codec_round_trip(pp_small):
    blob = pp_small.encode()
    back = decode_pp(blob)
    assert back.encode() == blob
    assert back.digest() == pp_small.digest()
    with pytest.raises(MalformedProof):
        decode_pp(blob[:40])
    with pytest.raises(MalformedProof):
        decode_pp(b"XXXX" + blob[4:])


def test_rsa_backend_pp_round_trip():
    pp = setup(128, 8, 2, b"rsa-pp", group=rsa_challenge_spec())
    back = decode_pp(pp.encode())
    assert back.encode() == pp.encode()
    assert back.group.name == "rsa-challenge"


def test_commit_open_accepts_honest(pp_small):
    rng = random.Random(0xC033)
    for trial in range(10):
        f = random_poly(rng, pp_small.d)
        com, hint = commit(pp_small, f, b"open-%d" % trial)
        assert open_commitment(pp_small, com, hint) == 1


def test_commit_rejects_degree_overflow(pp_small):
    f = Poly.monomial(F, 1, pp_small.d)
    with pytest.raises(InvalidParams):
        commit(pp_small, f, b"too-big")


def test_open_rejects_wrong_polynomial(pp_small):
    rng = random.Random(0x0BAD)
    from lumen.pcs import OpeningHint

    f = random_poly(rng, pp_small.d)
    com, hint = commit(pp_small, f, b"wrong-f")
    other = random_poly(rng, pp_small.d)
    assert open_commitment(pp_small, com, OpeningHint(p1=hint.p1, f=other)) == 0


def test_commitment_codec_round_trip(pp_small):
    rng = random.Random(0xC0DE)
    f = random_poly(rng, pp_small.d)
    com, _ = commit(pp_small, f, b"codec")
    blob = com.encode(pp_small)
    back = Commitment.decode(pp_small, blob)
    assert back == com
    with pytest.raises(MalformedProof):
        Commitment.decode(pp_small, blob[:-3])


def test_commitment_is_seed_dependent(pp_small):
    rng = random.Random(0x5EED)
    f = random_poly(rng, pp_small.d)
    com1, _ = commit(pp_small, f, b"seed-1")
    com2, _ = commit(pp_small, f, b"seed-2")
    assert com1.c != com2.c  # masking hides the payload across seeds


def test_verify_poly_accepts_honest(pp_small):
    rng = random.Random(0x6009)
    for trial in range(10):
        f = random_poly(rng, pp_small.d)
        com, hint = commit(pp_small, f, b"vp-%d" % trial)
        tp = fresh_transcript(pp_small)
        trace = build_verify_poly_trace(pp_small, com, hint, tp)
        tv = fresh_transcript(pp_small)
        assert verify_poly(pp_small, trace, tv) == 1


def test_verify_poly_rejects_scalar_tampering(pp_small):
    import dataclasses

    rng = random.Random(0x7A39)
    f = random_poly(rng, pp_small.d)
    com, hint = commit(pp_small, f, b"vp-tamper")
    trace = build_verify_poly_trace(pp_small, com, hint, fresh_transcript(pp_small))
    for fieldname in ("m", "n", "r_scalar", "sigma_claim"):
        bad = dataclasses.replace(trace, **{fieldname: F.add(getattr(trace, fieldname), 1)})
        assert verify_poly(pp_small, bad, fresh_transcript(pp_small)) == 0, fieldname
    bad_r = dataclasses.replace(trace, r_coeffs=(F.add(trace.r_coeffs[0], 1),) + trace.r_coeffs[1:])
    assert verify_poly(pp_small, bad_r, fresh_transcript(pp_small)) == 0


def test_verify_poly_is_transcript_bound(pp_small):
    rng = random.Random(0x7B1D)
    f = random_poly(rng, pp_small.d)
    com, hint = commit(pp_small, f, b"vp-bind")
    trace = build_verify_poly_trace(pp_small, com, hint, fresh_transcript(pp_small))
    other = Transcript(b"test/pcs/other")
    other.absorb(b"pp", pp_small.digest())
    assert verify_poly(pp_small, trace, other) == 0


def eval_pipeline(pp, f, seed):
    com, hint = commit(pp, f, seed)
    tp = fresh_transcript(pp)
    absorb_commitment(tp, com)
    claims, eproof = eval_prove(pp, com, hint, tp, seed + b"/eval")
    tv = fresh_transcript(pp)
    absorb_commitment(tv, com)
    q_at_xv = com.q.eval(pp.x_v)
    return claims, eproof, tv, q_at_xv


def test_eval_argument_accepts_honest(pp_small):
    rng = random.Random(0xE7A1)
    for trial in range(10):
        f = random_poly(rng, pp_small.d)
        claims, eproof, tv, q_at_xv = eval_pipeline(pp_small, f, b"ev-%d" % trial)
        assert eval_verify(pp_small, q_at_xv, claims, eproof, tv) == 1


def test_eval_argument_rejects_tampered_claims(pp_small):
    import dataclasses

    rng = random.Random(0xE7A2)
    f = random_poly(rng, pp_small.d)
    claims, eproof, tv, q_at_xv = eval_pipeline(pp_small, f, b"ev-bad")
    bad_claims = dataclasses.replace(claims, y_u=F.add(claims.y_u, 1))
    assert eval_verify(pp_small, q_at_xv, bad_claims, eproof, tv.clone()) == 0
    bad_proof = dataclasses.replace(eproof, v_prime=F.add(eproof.v_prime, 1))
    assert eval_verify(pp_small, q_at_xv, claims, bad_proof, tv.clone()) == 0
    assert eval_verify(pp_small, F.add(q_at_xv, 1), claims, eproof, tv.clone()) == 0


def test_simulators_match_shapes(pp_small):
    rng_t = KeccakRng(b"sim", b"trace")
    st = simulate_trace(pp_small, fresh_transcript(pp_small), rng_t)
    assert len(st.r_coeffs) == pp_small.alpha
    assert len(st.s_coeffs) == pp_small.alpha
    assert len(st.t_coeffs) == pp_small.alpha
    rng_e = KeccakRng(b"sim", b"eval")
    claims, eproof = simulate_eval(pp_small, 7, fresh_transcript(pp_small), rng_e)
    assert len(eproof.c_digest) == 32


def test_digest_cache_stable_under_reencode(pp_small):
    # digest() memoizes; a fresh decode must agree with the cached value
    d1 = pp_small.digest()
    d2 = decode_pp(pp_small.encode()).digest()
    assert d1 == d2 == keccak256(pp_small.encode())
