"""Hash primitive and Fiat-Shamir transcript unit tests."""

import random

import pytest

from lumen.errors import ChallengeDomainError
from lumen.field import GOLDILOCKS
from lumen.keccak import keccak256, keccak256_py, keccak_f
from lumen.transcript import KeccakRng, Transcript, hash_to_field

F = GOLDILOCKS

# published digests for the 0x01-padded variant
KNOWN = {
    b"": "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470",
    b"abc": "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45",
    b"The quick brown fox jumps over the lazy dog":
        "4d741b6f1eb29cb2a9b9911c82f56fa8d73b04959d3d9d222895df6c0b28aa15",
}


def test_known_vectors():
    for msg, want in KNOWN.items():
        assert keccak256(msg).hex() == want
        assert keccak256_py(msg).hex() == want


def test_fast_and_pure_paths_agree():
    rng = random.Random(0xFA57)
    # exercise every padding branch: empty, short, rate-1, rate, rate+1, multi-block
    lengths = [0, 1, 31, 135, 136, 137, 271, 272, 273, 1000, 5000]
    lengths += [rng.randrange(0, 2000) for _ in range(30)]
    for n in lengths:
        msg = bytes(rng.getrandbits(8) for _ in range(n))
        assert keccak256(msg) == keccak256_py(msg), n


def test_permutation_changes_state():
    state = list(range(25))
    out = keccak_f(list(state))
    assert out != state
    assert all(0 <= lane < (1 << 64) for lane in out)


def test_digest_length_and_determinism():
    d1 = keccak256(b"determinism")
    d2 = keccak256(b"determinism")
    assert d1 == d2
    assert len(d1) == 32


def test_transcript_determinism_and_separation():
    t1 = Transcript(b"domain/a")
    t2 = Transcript(b"domain/a")
    t3 = Transcript(b"domain/b")
    for t in (t1, t2, t3):
        t.absorb(b"x", b"payload")
    c1 = t1.challenge_field(F, b"c")
    c2 = t2.challenge_field(F, b"c")
    c3 = t3.challenge_field(F, b"c")
    assert c1 == c2
    assert c1 != c3


def test_label_framing_resists_concatenation_games():
    # moving a byte between label and payload must change the state
    t1 = Transcript(b"d")
    t2 = Transcript(b"d")
    t1.absorb(b"ab", b"c")
    t2.absorb(b"a", b"bc")
    assert t1.challenge_field(F, b"z") != t2.challenge_field(F, b"z")


def test_challenge_stream_advances():
    t = Transcript(b"d")
    t.absorb(b"x", b"y")
    a = t.challenge_field(F, b"c")
    b = t.challenge_field(F, b"c")
    assert a != b


def test_absorb_after_challenge_changes_future():
    t1 = Transcript(b"d")
    t2 = Transcript(b"d")
    for t in (t1, t2):
        t.absorb(b"x", b"y")
        t.challenge_field(F, b"c1")
    t2.absorb(b"late", b"data")
    assert t1.challenge_field(F, b"c2") != t2.challenge_field(F, b"c2")


def test_clone_diverges_independently():
    t = Transcript(b"d")
    t.absorb(b"x", b"y")
    c = t.clone()
    assert t.challenge_field(F, b"a") == c.challenge_field(F, b"a")
    t.absorb(b"p", b"q")
    assert t.challenge_field(F, b"b") != c.challenge_field(F, b"b")


def test_nonzero_challenge_never_zero():
    t = Transcript(b"d")
    for i in range(300):
        assert t.challenge_nonzero_field(F, b"nz" + bytes([i % 256])) != 0


def test_challenge_exponent_range_and_rejection():
    t = Transcript(b"d")
    seen = set()
    for _ in range(200):
        e = t.challenge_exponent(13, b"e")
        assert 0 <= e < 13
        seen.add(e)
    assert len(seen) == 13  # all residues reachable
    with pytest.raises(ChallengeDomainError):
        t.challenge_exponent(0, b"bad")


def test_avalanche_on_absorbed_bytes():
    # one flipped payload bit must flip every later challenge
    rng = random.Random(0xA1A)
    for trial in range(100):
        payload = bytearray(rng.getrandbits(8) for _ in range(64))
        t1 = Transcript(b"avalanche")
        t1.absorb(b"p", bytes(payload))
        pos = rng.randrange(len(payload))
        payload[pos] ^= 1 << rng.randrange(8)
        t2 = Transcript(b"avalanche")
        t2.absorb(b"p", bytes(payload))
        for label in (b"c1", b"c2", b"c3"):
            assert t1.challenge_field(F, label) != t2.challenge_field(F, label), trial


def test_hash_to_field_reduces():
    rng = random.Random(0x42F1)
    for _ in range(50):
        data = bytes(rng.getrandbits(8) for _ in range(40))
        v = hash_to_field(F, data)
        assert 0 <= v < F.modulus
        assert v == hash_to_field(F, data)


def test_rng_determinism_and_domains():
    r1 = KeccakRng(b"seed", b"dom")
    r2 = KeccakRng(b"seed", b"dom")
    r3 = KeccakRng(b"seed", b"other")
    assert r1.take(48) == r2.take(48)
    assert r1.take(16) != r3.take(16)


def test_rng_field_and_bounds():
    rng = KeccakRng(b"seed", b"bounds")
    for _ in range(200):
        assert 0 <= rng.field(F) < F.modulus
        assert rng.field_nonzero(F) != 0
        assert 0 <= rng.int_below(97) < 97


def test_rng_coeffs_shape():
    rng = KeccakRng(b"seed", b"coeffs")
    cs = rng.coeffs(F, 33)
    assert len(cs) == 33
    assert all(0 <= c < F.modulus for c in cs)


def test_rng_byte_uniformity_coarse():
    # 64 blocks of 256 bytes: every byte value should appear; a crude
    # equidistribution floor, not a proper statistical test
    rng = KeccakRng(b"seed", b"uniform")
    counts = [0] * 256
    stream = rng.take(256 * 64)
    for b in stream:
        counts[b] += 1
    assert min(counts) > 0
    mean = len(stream) / 256
    assert max(counts) < 3 * mean
