"""Byte-for-byte reconstruction of the library's serialized artifacts.

Parameter files and generated relations are deterministic functions of
their seeds, so an independent implementation must reproduce the exact
bytes the `setup` and `gen-relation` commands write.  The layouts
mirrored here are the documented wire format: magic, version, sizes,
then length-prefixed little-endian coefficient vectors.
"""

from .groupmath import TEST_ENCODING_BYTES, encode_element, generator_chain
from .modmath import P
from .polyops import encode_coeffs, norm
from .randstream import ChallengeChain, DrawStream, le
from .sponge import digest

PP_MAGIC = b"LUMNPP"
PP_VERSION = 1
RELATION_MAGIC = b"LUMNIX"
RELATION_VERSION = 1
TEST_BACKEND_TAG = 1
TEST_BACKEND_NAME = b"test-known-order"
SHAPE_DEGREE_LIMIT = 8


class SetupData:
    """Everything the setup seed determines, held as plain values."""

    def __init__(self, lam, d, alpha, seed):
        chain = ChallengeChain(b"lumen/setup/v1")
        chain.absorb(b"lam", le(lam, 4))
        chain.absorb(b"d", le(d, 8))
        chain.absorb(b"alpha", le(alpha, 4))
        chain.absorb(b"seed", seed)
        chain.absorb(b"backend", TEST_BACKEND_NAME)
        self.lam, self.d, self.alpha, self.seed = lam, d, alpha, seed
        self.g, self.u = generator_chain(seed, alpha)
        self.v = []
        for _ in range(alpha):
            vi = chain.bounded_challenge(1 << 64, b"v")
            while vi % P == 0:
                vi = chain.bounded_challenge(1 << 64, b"v/retry")
            self.v.append(vi)
        self.alpha_scalar = chain.nonzero_field_challenge(b"alpha-scalar")
        self.p2 = norm(DrawStream(seed, b"lumen/setup/p2").coeffs(d))
        hats = [
            int.from_bytes(digest(b"pcs/uhat" + encode_element(ui)), "big") % P
            for ui in self.u
        ]
        self.s_u = sum(hats) % P
        self.x_u = int.from_bytes(
            digest(b"pcs/xu" + b"".join(encode_element(ui) for ui in self.u)), "big"
        ) % P
        self.x_v = int.from_bytes(
            digest(b"pcs/xv" + b"".join(le(vi, 8) for vi in self.v)), "big"
        ) % P

    def encode(self):
        out = bytearray(PP_MAGIC)
        out.append(PP_VERSION)
        out += le(self.lam, 4) + le(self.d, 8) + le(self.alpha, 4)
        out.append(TEST_BACKEND_TAG)
        out += le(len(self.seed), 4) + self.seed
        for vi in self.v:
            out += le(vi, 8)
        out += encode_element(self.g, TEST_ENCODING_BYTES)
        for ui in self.u:
            out += encode_element(ui, TEST_ENCODING_BYTES)
        out += le(self.alpha_scalar, 8)
        out += encode_coeffs(self.p2)
        return bytes(out)


def generate_relation(size, seed):
    """The seeded demo relation: diagonal spine, shifted spine, extras."""
    rng = DrawStream(seed, b"piop/gen-relation")
    n = size
    entries1 = {}
    entries2 = {}
    for i in range(n):
        entries1[(i, i)] = rng.field_nonzero()
        entries2[(i, (i + 1) % n)] = rng.field_nonzero()
    extra = max(1, size // 2)
    for _ in range(extra):
        for entries in (entries1, entries2):
            r = rng.below(n)
            c = rng.below(n)
            # the value draw happens whether or not the slot is taken
            v = rng.field_nonzero()
            if (r, c) not in entries:
                entries[(r, c)] = v
    deg = min(4, SHAPE_DEGREE_LIMIT)
    h = norm(rng.coeffs(deg))
    h2 = norm(rng.coeffs(deg))
    h3 = norm(rng.coeffs(deg))
    if not h2:
        h2 = [1]
    return {
        "n": n,
        "m": n,
        "k": 2 * n + extra + 1,
        "m1": sorted((r, c, v) for (r, c), v in entries1.items()),
        "m2": sorted((r, c, v) for (r, c), v in entries2.items()),
        "h": h,
        "h2": h2,
        "h3": h3,
    }


def relation_bytes(rel):
    out = bytearray(RELATION_MAGIC)
    out.append(RELATION_VERSION)
    out += le(rel["n"], 8) + le(rel["m"], 8) + le(rel["k"], 8)
    out += le(rel.get("limit", SHAPE_DEGREE_LIMIT), 4)
    for mat in (rel["m1"], rel["m2"]):
        out += le(len(mat), 4)
        for r, c, v in mat:
            out += le(r, 8) + le(c, 8) + le(v, 8)
    out += encode_coeffs(norm(rel["h"]))
    out += encode_coeffs(norm(rel["h2"]))
    out += encode_coeffs(norm(rel["h3"]))
    return bytes(out)


def relation_digest(rel):
    return digest(relation_bytes(rel))
