"""Groups of unknown order behind a minimal multiplicative interface.

The production backend works in (Z/N)* / {+-1} for the published
RSA-2048 factoring-challenge modulus, restricted to quadratic residues;
nobody knows that group's order, and no trusted setup exists beyond the
public modulus.  Elements are canonical representatives min(x, N - x).

A test-only backend over a small prime exposes a known subgroup order
through `known_order`, which protocol code must never read; it exists
so tests can check exponent laws against ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams, InvalidSeed
from .keccak import keccak256
from .transcript import frame

# Published RSA-2048 challenge modulus (617 decimal digits).  Hard-coded;
# the digest below pins the decimal string against accidental edits.
RSA_2048_MODULUS = int(
    "2519590847565789349402718324004839857142928212620403202777713783604366202070"
    "7595556264018525880784406918290641249515082189298559149176184502808489120072"
    "8449926873928072877767359714183472702618963750149718246911650776133798590957"
    "0009733045974880842840179742910064245869181719511874612151517265463228221686"
    "9987549182422433637259085141865462043576798423387184774447920739934236584823"
    "8242811981638150106748104516603773060562016196762561338441436038339044149526"
    "3443219011465754445417842402092461651572335077870774981712577246796292638635"
    "6373289912154831438167899885040445364023527381951378636564391212010397122822"
    "120720357"
)
_RSA_2048_CHECKSUM = "496ce6127d4d4139625eced5039c4d5d4c8448c59e31bfa21a98f0d7e5c2e2d4"

assert len(str(RSA_2048_MODULUS)) == 617
assert RSA_2048_MODULUS.bit_length() == 2048
assert RSA_2048_MODULUS % 2 == 1
assert keccak256(str(RSA_2048_MODULUS).encode()).hex() == _RSA_2048_CHECKSUM

# Test backend: prime 607, quadratic residues have order 303 = 3 * 101;
# the cofactor 3 lands setup generators in the order-101 subgroup.
_TEST_MODULUS = 607
_TEST_COFACTOR = 3
_TEST_ORDER = 101


@dataclass(frozen=True)
class GroupSpec:
    """Backend description; `known_order` is for tests only."""

    name: str
    modulus: int
    encoding_bytes: int
    cofactor: int = 1
    known_order: int | None = None

    def canon(self, x: int) -> int:
        """Canonical representative in the quotient by {+-1}."""
        x %= self.modulus
        return min(x, self.modulus - x)

    def identity(self) -> int:
        return 1


def rsa_challenge_spec() -> GroupSpec:
    return GroupSpec(name="rsa-challenge", modulus=RSA_2048_MODULUS, encoding_bytes=256)


def test_known_order_spec() -> GroupSpec:
    return GroupSpec(
        name="test-known-order",
        modulus=_TEST_MODULUS,
        encoding_bytes=8,
        cofactor=_TEST_COFACTOR,
        known_order=_TEST_ORDER,
    )


def gmul(spec: GroupSpec, a: int, b: int) -> int:
    return spec.canon(a * b % spec.modulus)


def gpow(spec: GroupSpec, a: int, e: int) -> int:
    """Exponentiation with signed exponents; negatives go through the
    modular inverse (no order knowledge needed)."""
    if e < 0:
        return spec.canon(pow(pow(a, -1, spec.modulus), -e, spec.modulus))
    return spec.canon(pow(a, e, spec.modulus))


def encode_element(spec: GroupSpec, x: int) -> bytes:
    return int(x).to_bytes(spec.encoding_bytes, "big")


def decode_element(spec: GroupSpec, data: bytes) -> int:
    if len(data) != spec.encoding_bytes:
        raise InvalidParams(f"group element must be {spec.encoding_bytes} bytes")
    x = int.from_bytes(data, "big")
    if not (0 < x < spec.modulus):
        raise InvalidParams("group element out of range")
    return spec.canon(x)


def hash_to_residue(spec: GroupSpec, seed: bytes, attempts: int = 256) -> int:
    """Map a seed into the quadratic residues by hashing and squaring.

    Counter-mode keccak expands the seed past the modulus width; trivial
    results (the identity coset) are rejected and retried.  InvalidSeed
    after the attempt budget.
    """
    width = (spec.modulus.bit_length() + 7) // 8 + 16
    for ctr in range(attempts):
        blocks = bytearray()
        i = 0
        while len(blocks) < width:
            blocks += keccak256(frame(b"group/residue", seed + bytes([ctr])) + i.to_bytes(8, "little"))
            i += 1
        r = int.from_bytes(bytes(blocks[:width]), "big") % spec.modulus
        g = spec.canon(pow(r, 2 * spec.cofactor, spec.modulus))
        if g not in (0, 1):
            return g
    raise InvalidSeed(f"no usable residue after {attempts} attempts")


def transparent_setup(spec: GroupSpec, seed: bytes, alpha: int) -> tuple[int, list[int]]:
    """Seed-derived generator plus its power chain [g^1 .. g^alpha].

    Nothing here is secret: anyone can recompute (g, u) from the seed.
    """
    if alpha < 1:
        raise InvalidParams("alpha must be at least 1")
    g = hash_to_residue(spec, seed)
    u = []
    acc = 1
    for _ in range(alpha):
        acc = gmul(spec, acc, g)
        u.append(acc)
    return g, u
