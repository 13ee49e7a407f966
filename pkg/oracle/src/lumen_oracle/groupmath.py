"""Known-order test group, rebuilt on square-and-multiply.

The library's test backend is the quotient of (Z/607)* by {+-1},
restricted to quadratic residues via a cofactor-3 squaring; these
constants are part of its documented surface.  Exponentiation here is
explicit binary square-and-multiply and inversion is the extended
Euclid loop, so no arithmetic shortcut is borrowed from anywhere.
"""

from .randstream import frame
from .sponge import digest

TEST_MODULUS = 607
TEST_COFACTOR = 3
TEST_ENCODING_BYTES = 8


def canon(x, modulus=TEST_MODULUS):
    x %= modulus
    other = modulus - x
    return x if x < other else other


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_r, old_s


def modinv(a, modulus):
    g, s = _egcd(a % modulus, modulus)
    if g != 1:
        raise ValueError("element is not invertible")
    return s % modulus


def power(base, exp, modulus):
    """Binary square-and-multiply; negative exponents invert first."""
    if exp < 0:
        base = modinv(base, modulus)
        exp = -exp
    acc = 1
    base %= modulus
    while exp:
        if exp & 1:
            acc = acc * base % modulus
        base = base * base % modulus
        exp >>= 1
    return acc


def gmul(a, b, modulus=TEST_MODULUS):
    return canon(a * b % modulus, modulus)


def gpow(a, e, modulus=TEST_MODULUS):
    return canon(power(a, e, modulus), modulus)


def encode_element(x, width=TEST_ENCODING_BYTES):
    return int(x).to_bytes(width, "big")


def hash_to_residue(seed, modulus=TEST_MODULUS, cofactor=TEST_COFACTOR, attempts=256):
    """Counter-expanded digest, reduced and squared into the residues."""
    width = (modulus.bit_length() + 7) // 8 + 16
    for ctr in range(attempts):
        blocks = b""
        i = 0
        while len(blocks) < width:
            blocks += digest(frame(b"group/residue", seed + bytes([ctr])) + i.to_bytes(8, "little"))
            i += 1
        r = int.from_bytes(blocks[:width], "big") % modulus
        g = canon(power(r, 2 * cofactor, modulus), modulus)
        if g not in (0, 1):
            return g
    raise ValueError(f"no usable residue after {attempts} attempts")


def generator_chain(seed, alpha, modulus=TEST_MODULUS, cofactor=TEST_COFACTOR):
    """Seed-derived generator and its first alpha powers."""
    g = hash_to_residue(seed, modulus, cofactor)
    u = []
    acc = 1
    for _ in range(alpha):
        acc = gmul(acc, g, modulus)
        u.append(acc)
    return g, u
