"""Little-endian wire codecs shared by every module.

Field elements travel as 8-byte little-endian canonical residues and
polynomials as a 4-byte little-endian length prefix followed by
coefficients in ascending-degree order.  These two rules are normative
for every serialized artifact in the library.
"""

from __future__ import annotations

from .errors import MalformedProof

FIELD_BYTES = 8
LEN_BYTES = 4


def le(value: int, width: int) -> bytes:
    return int(value).to_bytes(width, "little")


def le8(value: int) -> bytes:
    return int(value).to_bytes(8, "little")


def le4(value: int) -> bytes:
    return int(value).to_bytes(4, "little")


def encode_field(value: int) -> bytes:
    return int(value).to_bytes(FIELD_BYTES, "little")


def encode_coeffs(coeffs) -> bytes:
    """Length-prefixed ascending coefficient list."""
    out = bytearray(le4(len(coeffs)))
    for c in coeffs:
        out += encode_field(c)
    return bytes(out)


class ByteReader:
    """Bounds-checked cursor over immutable proof bytes.

    Overruns raise MalformedProof so parsers never leak IndexError.
    """

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if n < 0 or self.pos + n > len(self.data):
            raise MalformedProof(f"truncated input: wanted {n} bytes at offset {self.pos}")
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def u8(self) -> int:
        return self.take(1)[0]

    def u16(self) -> int:
        return int.from_bytes(self.take(2), "little")

    def u32(self) -> int:
        return int.from_bytes(self.take(4), "little")

    def u64(self) -> int:
        return int.from_bytes(self.take(8), "little")

    def field(self, field=None) -> int:
        value = self.u64()
        if field is not None and value >= field.modulus:
            raise MalformedProof("field element encoding is not canonical")
        return value

    def coeffs(self, max_len: int = 1 << 26) -> list[int]:
        n = self.u32()
        if n > max_len:
            raise MalformedProof(f"coefficient count {n} exceeds limit")
        return [self.u64() for _ in range(n)]

    def expect(self, tag: bytes, what: str) -> None:
        got = self.take(len(tag))
        if got != tag:
            raise MalformedProof(f"bad {what}: {got!r}")

    def done(self) -> None:
        if self.pos != len(self.data):
            raise MalformedProof(f"{len(self.data) - self.pos} trailing bytes after parse")
