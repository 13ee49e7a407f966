# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Keccak-256 sponge, byte-identical to the pure-Python path.

Same pre-standardization 0x01 padding and lane layout as keccak.py;
this module only exists so transcript-heavy workloads are not limited
by interpreter speed.  keccak.py falls back to its own sponge when the
extension is absent, so builds without a C compiler still work.
Lanes are assembled byte-wise, so host endianness and buffer alignment
never matter.
"""

from libc.stdint cimport uint64_t
from libc.string cimport memset
from cpython.bytes cimport PyBytes_FromStringAndSize

cdef uint64_t[24] RC
RC[0] = 0x0000000000000001ULL; RC[1] = 0x0000000000008082ULL
RC[2] = 0x800000000000808AULL; RC[3] = 0x8000000080008000ULL
RC[4] = 0x000000000000808BULL; RC[5] = 0x0000000080000001ULL
RC[6] = 0x8000000080008081ULL; RC[7] = 0x8000000000008009ULL
RC[8] = 0x000000000000008AULL; RC[9] = 0x0000000000000088ULL
RC[10] = 0x0000000080008009ULL; RC[11] = 0x000000008000000AULL
RC[12] = 0x000000008000808BULL; RC[13] = 0x800000000000008BULL
RC[14] = 0x8000000000008089ULL; RC[15] = 0x8000000000008003ULL
RC[16] = 0x8000000000008002ULL; RC[17] = 0x8000000000000080ULL
RC[18] = 0x000000000000800AULL; RC[19] = 0x800000008000000AULL
RC[20] = 0x8000000080008081ULL; RC[21] = 0x8000000000008080ULL
RC[22] = 0x0000000080000001ULL; RC[23] = 0x8000000080008008ULL

# rho+pi fused tables: destination lane takes SRC[dst] rotated by ROTC[dst]
cdef int[25] SRC
cdef int[25] ROTC
SRC[:] = [0, 6, 12, 18, 24, 3, 9, 10, 16, 22, 1, 7, 13,
          19, 20, 4, 5, 11, 17, 23, 2, 8, 14, 15, 21]
ROTC[:] = [0, 44, 43, 21, 14, 28, 20, 3, 45, 61, 1, 6, 25,
           8, 18, 27, 36, 10, 15, 56, 62, 55, 39, 41, 2]


cdef inline uint64_t rotl(uint64_t v, int r) nogil:
    return (v << r) | (v >> (64 - r))


cdef void permute(uint64_t *a) nogil:
    cdef uint64_t c0, c1, c2, c3, c4, d0, d1, d2, d3, d4
    cdef uint64_t b[25]
    cdef int rnd, i, y
    for rnd in range(24):
        c0 = a[0] ^ a[5] ^ a[10] ^ a[15] ^ a[20]
        c1 = a[1] ^ a[6] ^ a[11] ^ a[16] ^ a[21]
        c2 = a[2] ^ a[7] ^ a[12] ^ a[17] ^ a[22]
        c3 = a[3] ^ a[8] ^ a[13] ^ a[18] ^ a[23]
        c4 = a[4] ^ a[9] ^ a[14] ^ a[19] ^ a[24]
        d0 = c4 ^ rotl(c1, 1)
        d1 = c0 ^ rotl(c2, 1)
        d2 = c1 ^ rotl(c3, 1)
        d3 = c2 ^ rotl(c4, 1)
        d4 = c3 ^ rotl(c0, 1)
        for i in range(0, 25, 5):
            a[i] ^= d0
            a[i + 1] ^= d1
            a[i + 2] ^= d2
            a[i + 3] ^= d3
            a[i + 4] ^= d4
        b[0] = a[0]
        for i in range(1, 25):
            b[i] = rotl(a[SRC[i]], ROTC[i])
        for y in range(0, 25, 5):
            a[y] = b[y] ^ (b[y + 2] & ~b[y + 1])
            a[y + 1] = b[y + 1] ^ (b[y + 3] & ~b[y + 2])
            a[y + 2] = b[y + 2] ^ (b[y + 4] & ~b[y + 3])
            a[y + 3] = b[y + 3] ^ (b[y] & ~b[y + 4])
            a[y + 4] = b[y + 4] ^ (b[y + 1] & ~b[y])
        a[0] ^= RC[rnd]


cdef inline void absorb_block(uint64_t *state, const unsigned char *block) nogil:
    cdef int i, j
    cdef uint64_t lane
    for i in range(17):
        lane = 0
        for j in range(8):
            lane |= (<uint64_t> block[8 * i + j]) << (8 * j)
        state[i] ^= lane
    permute(state)


def keccak256(const unsigned char[::1] data) -> bytes:
    """One-shot Keccak-256 of a contiguous byte buffer."""
    cdef uint64_t state[25]
    cdef unsigned char tail[136]
    cdef unsigned char out[32]
    cdef Py_ssize_t n = data.shape[0]
    cdef Py_ssize_t full = n - (n % 136)
    cdef Py_ssize_t off, i, rem
    memset(<void *> state, 0, sizeof(state))
    with nogil:
        for off in range(0, full, 136):
            absorb_block(state, &data[off])
        # final partial block with pad10*1 under the 0x01 marker
        rem = n - full
        memset(<void *> tail, 0, 136)
        for i in range(rem):
            tail[i] = data[full + i]
        tail[rem] = 0x01
        tail[135] |= 0x80
        absorb_block(state, tail)
        for i in range(4):
            for off in range(8):
                out[8 * i + off] = <unsigned char> ((state[i] >> (8 * off)) & 0xFF)
    return PyBytes_FromStringAndSize(<const char *> out, 32)
