"""Hidden-order group backend unit tests."""

import random

import pytest

from lumen.errors import InvalidParams
from lumen.groups import (
    decode_element,
    encode_element,
    gmul,
    gpow,
    hash_to_residue,
    rsa_challenge_spec,
    transparent_setup,
)
from lumen.groups import test_known_order_spec as known_order_spec

SPECS = [known_order_spec(), rsa_challenge_spec()]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_group_axioms(spec):
    rng = random.Random(0x6A0B)
    for _ in range(20):
        a = spec.canon(rng.randrange(2, spec.modulus - 2))
        b = spec.canon(rng.randrange(2, spec.modulus - 2))
        c = spec.canon(rng.randrange(2, spec.modulus - 2))
        assert gmul(spec, a, b) == gmul(spec, b, a)
        assert gmul(spec, gmul(spec, a, b), c) == gmul(spec, a, gmul(spec, b, c))
        assert gmul(spec, a, spec.identity()) == spec.canon(a)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_quotient_sign_identification(spec):
    # x and -x name the same element after canonicalization
    rng = random.Random(0x5160)
    for _ in range(20):
        x = rng.randrange(2, spec.modulus - 2)
        assert spec.canon(x) == spec.canon(spec.modulus - x)
        assert spec.canon(x) <= spec.modulus // 2


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_gpow_agrees_with_repeated_mul(spec):
    rng = random.Random(0x6F0D)
    a = spec.canon(rng.randrange(2, spec.modulus - 2))
    acc = spec.identity()
    for e in range(12):
        assert gpow(spec, a, e) == acc
        acc = gmul(spec, acc, a)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_gpow_addition_law(spec):
    rng = random.Random(0xADD1)
    a = spec.canon(rng.randrange(2, spec.modulus - 2))
    for _ in range(10):
        e1 = rng.randrange(0, 1 << 40)
        e2 = rng.randrange(0, 1 << 40)
        assert gmul(spec, gpow(spec, a, e1), gpow(spec, a, e2)) == gpow(spec, a, e1 + e2)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_element_codec_round_trip(spec):
    rng = random.Random(0xC0DE)
    for _ in range(20):
        x = spec.canon(rng.randrange(2, spec.modulus - 2))
        blob = encode_element(spec, x)
        assert len(blob) == spec.encoding_bytes
        assert decode_element(spec, blob) == x


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_decode_rejects_out_of_range(spec):
    too_big = (spec.modulus + 5).to_bytes(spec.encoding_bytes, "big")
    with pytest.raises(InvalidParams):
        decode_element(spec, too_big)
    with pytest.raises(InvalidParams):
        decode_element(spec, b"\x00")


def test_rsa_modulus_shape():
    spec = rsa_challenge_spec()
    assert spec.modulus.bit_length() == 2048
    assert spec.modulus % 2 == 1
    assert spec.known_order is None
    # no tiny factors: the published challenge modulus is a semiprime
    for q in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        assert spec.modulus % q != 0


def test_known_order_backend_exposes_order():
    # the advertised order binds elements derived through the residue
    # map, which clears the cofactor; arbitrary residues are not covered
    spec = known_order_spec()
    assert spec.known_order is not None
    for i in range(10):
        g = hash_to_residue(spec, b"order-probe" + bytes([i]))
        assert gpow(spec, g, spec.known_order) == spec.identity()
        assert gpow(spec, g, spec.known_order + 1) == g


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_hash_to_residue_deterministic(spec):
    a = hash_to_residue(spec, b"seed-one")
    b = hash_to_residue(spec, b"seed-one")
    c = hash_to_residue(spec, b"seed-two")
    assert a == b
    assert a != c
    assert 1 < a < spec.modulus


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.name)
def test_transparent_setup_reproducible(spec):
    g1, u1 = transparent_setup(spec, b"pp-seed", 4)
    g2, u2 = transparent_setup(spec, b"pp-seed", 4)
    g3, u3 = transparent_setup(spec, b"pp-other", 4)
    assert (g1, u1) == (g2, u2)
    assert (g1, u1) != (g3, u3)
    assert len(u1) == 4
    assert u1[0] == g1  # power chain starts at g itself
    assert len(set(u1)) == 4
    for i, ui in enumerate(u1):
        assert ui == gpow(spec, g1, i + 1)


def test_transparent_setup_rejects_bad_width():
    with pytest.raises(InvalidParams):
        transparent_setup(known_order_spec(), b"seed", 0)
