"""Keccak-256 with the original 0x01 multi-rate padding.

This is the pre-standardization variant (the one Ethereum uses), NOT
NIST SHA3-256: the padding marker is 0x01, the rate is 1088 bits and
the capacity 512.  State lanes are 64-bit little-endian words indexed
x + 5y.
"""

from __future__ import annotations

RATE_BYTES = 136
DIGEST_BYTES = 32
_MASK = (1 << 64) - 1

_ROUND_CONSTANTS = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)

_ROTATION = (
    (0, 36, 3, 41, 18),
    (1, 44, 10, 45, 2),
    (62, 6, 43, 15, 61),
    (28, 55, 25, 21, 56),
    (27, 20, 39, 8, 14),
)

# rho+pi fused: for destination lane index, the (source index, rotation)
_RHO_PI = [(0, 0)] * 25
for _x in range(5):
    for _y in range(5):
        _src = _x + 5 * _y
        _dst = _y + 5 * ((2 * _x + 3 * _y) % 5)
        _RHO_PI[_dst] = (_src, _ROTATION[_x][_y])
_RHO_PI = tuple(_RHO_PI)


def keccak_f(a: list[int]) -> list[int]:
    """24-round permutation on a 25-lane state, in place."""
    for rc in _ROUND_CONSTANTS:
        c0 = a[0] ^ a[5] ^ a[10] ^ a[15] ^ a[20]
        c1 = a[1] ^ a[6] ^ a[11] ^ a[16] ^ a[21]
        c2 = a[2] ^ a[7] ^ a[12] ^ a[17] ^ a[22]
        c3 = a[3] ^ a[8] ^ a[13] ^ a[18] ^ a[23]
        c4 = a[4] ^ a[9] ^ a[14] ^ a[19] ^ a[24]
        d0 = c4 ^ (((c1 << 1) | (c1 >> 63)) & _MASK)
        d1 = c0 ^ (((c2 << 1) | (c2 >> 63)) & _MASK)
        d2 = c1 ^ (((c3 << 1) | (c3 >> 63)) & _MASK)
        d3 = c2 ^ (((c4 << 1) | (c4 >> 63)) & _MASK)
        d4 = c3 ^ (((c0 << 1) | (c0 >> 63)) & _MASK)
        for i in range(0, 25, 5):
            a[i] ^= d0
            a[i + 1] ^= d1
            a[i + 2] ^= d2
            a[i + 3] ^= d3
            a[i + 4] ^= d4
        b = [0] * 25
        for dst in range(25):
            src, r = _RHO_PI[dst]
            v = a[src]
            b[dst] = ((v << r) | (v >> (64 - r))) & _MASK if r else v
        for y in range(0, 25, 5):
            b0, b1, b2, b3, b4 = b[y], b[y + 1], b[y + 2], b[y + 3], b[y + 4]
            a[y] = b0 ^ (b2 & ~b1)
            a[y + 1] = b1 ^ (b3 & ~b2)
            a[y + 2] = b2 ^ (b4 & ~b3)
            a[y + 3] = b3 ^ (b0 & ~b4)
            a[y + 4] = b4 ^ (b1 & ~b0)
        a[0] ^= rc
    return a


def _pad(data: bytes) -> bytes:
    # pad10*1 with the 0x01 domain marker; single-byte case is 0x81
    q = RATE_BYTES - (len(data) % RATE_BYTES)
    if q == 1:
        return data + b"\x81"
    return data + b"\x01" + b"\x00" * (q - 2) + b"\x80"


def keccak256_py(data: bytes) -> bytes:
    """Interpreted one-shot Keccak-256; the reference the fast path must match."""
    state = [0] * 25
    padded = _pad(data)
    for off in range(0, len(padded), RATE_BYTES):
        block = padded[off : off + RATE_BYTES]
        for i in range(17):
            state[i] ^= int.from_bytes(block[8 * i : 8 * i + 8], "little")
        keccak_f(state)
    out = bytearray()
    for i in range(4):
        out += state[i].to_bytes(8, "little")
    return bytes(out)


try:
    from ._keccak_native import keccak256 as _keccak256_native
except ImportError:
    _keccak256_native = None


def keccak256(data: bytes) -> bytes:
    """One-shot Keccak-256 digest of arbitrary-length bytes."""
    if _keccak256_native is not None:
        return _keccak256_native(data)
    return keccak256_py(data)
