"""Keccak-256 rebuilt from the permutation definition.

Nothing here is tuned or tabulated: round constants come from the
degree-8 LFSR, rotation offsets from the (t+1)(t+2)/2 walk over the
coordinate sequence, and the state is kept as a 5x5 grid of lanes.
Padding is the pre-standardization 0x01 multi-rate variant (the
Ethereum flavor), rate 136 bytes, 32-byte digest.
"""

RATE = 136
WORD = 64
MASK = (1 << WORD) - 1


def _lfsr_bit(t):
    # x^8 + x^6 + x^5 + x^4 + 1 over GF(2), seeded with 1
    r = 1
    for _ in range(t % 255):
        r <<= 1
        if r & 0x100:
            r ^= 0x171
    return r & 1


def _round_constants():
    out = []
    for ir in range(24):
        rc = 0
        for j in range(7):
            if _lfsr_bit(j + 7 * ir):
                rc |= 1 << ((1 << j) - 1)
        out.append(rc)
    return out


def _rotation_offsets():
    off = [[0] * 5 for _ in range(5)]
    x, y = 1, 0
    for t in range(24):
        off[x][y] = ((t + 1) * (t + 2) // 2) % WORD
        x, y = y, (2 * x + 3 * y) % 5
    return off


_RC = _round_constants()
_ROT = _rotation_offsets()


def _rol(v, n):
    n %= WORD
    if n == 0:
        return v
    return ((v << n) | (v >> (WORD - n))) & MASK


def _permute(a):
    for rc in _RC:
        c = [a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4] for x in range(5)]
        d = [c[(x - 1) % 5] ^ _rol(c[(x + 1) % 5], 1) for x in range(5)]
        for x in range(5):
            for y in range(5):
                a[x][y] ^= d[x]
        b = [[0] * 5 for _ in range(5)]
        for x in range(5):
            for y in range(5):
                b[y][(2 * x + 3 * y) % 5] = _rol(a[x][y], _ROT[x][y])
        for x in range(5):
            for y in range(5):
                a[x][y] = b[x][y] ^ ((~b[(x + 1) % 5][y]) & b[(x + 2) % 5][y])
        a[0][0] ^= rc
    return a


def digest(data):
    """Keccak-256 of the whole input, as 32 bytes."""
    pad_len = RATE - (len(data) % RATE)
    if pad_len == 1:
        msg = data + b"\x81"
    else:
        msg = data + b"\x01" + b"\x00" * (pad_len - 2) + b"\x80"
    a = [[0] * 5 for _ in range(5)]
    for start in range(0, len(msg), RATE):
        block = msg[start : start + RATE]
        for i in range(RATE // 8):
            lane = int.from_bytes(block[8 * i : 8 * i + 8], "little")
            a[i % 5][i // 5] ^= lane
        _permute(a)
    out = b""
    for i in range(4):
        out += a[i % 5][i // 5].to_bytes(8, "little")
    return out
