"""Fiat-Shamir transcript over a chained Keccak-256 sponge.

Absorption framing is normative wire format: label bytes, a 0x00
separator, the 8-byte little-endian payload length, then the payload.
Challenges are themselves absorptions (label + running counter), so
identical absorption sequences always regenerate identical challenge
sequences, and any prefix divergence changes every later challenge.

Field challenges reduce the 256-bit digest mod p (statistical distance
below 2^-128 for the default modulus, since 2^256 mod p < p and
p ~ 2^64).  Exponent challenges use rejection sampling and are exactly
uniform on [0, bound).
"""

from __future__ import annotations

from .encoding import le8
from .errors import ChallengeDomainError
from .field import Field
from .keccak import keccak256

_TWO_256 = 1 << 256


def frame(label: bytes, payload: bytes) -> bytes:
    """The normative absorption frame."""
    return label + b"\x00" + le8(len(payload)) + payload


def hash_to_field(field: Field, data: bytes) -> int:
    """keccak256(data) read big-endian, reduced mod p."""
    return int.from_bytes(keccak256(data), "big") % field.modulus


class Transcript:
    """Deterministic challenge generator with domain-separated labels."""

    def __init__(self, domain: bytes = b"lumen/v1"):
        self.state = keccak256(frame(b"init", domain))
        self.counter = 0

    def absorb(self, label: bytes, payload: bytes) -> None:
        self.state = keccak256(self.state + frame(label, payload))

    def absorb_field(self, label: bytes, value: int) -> None:
        self.absorb(label, le8(value))

    def absorb_fields(self, label: bytes, values) -> None:
        self.absorb(label, b"".join(le8(v) for v in values))

    def _draw(self, label: bytes) -> bytes:
        self.absorb(b"challenge/" + label, le8(self.counter))
        self.counter += 1
        return self.state

    def challenge_field(self, field: Field, label: bytes) -> int:
        return int.from_bytes(self._draw(label), "big") % field.modulus

    def challenge_nonzero_field(self, field: Field, label: bytes) -> int:
        x = self.challenge_field(field, label)
        while x == 0:
            x = self.challenge_field(field, label + b"/retry")
        return x

    def challenge_exponent(self, bound: int, label: bytes) -> int:
        """Uniform integer in [0, bound) by rejection sampling 256-bit draws."""
        if bound < 1:
            raise ChallengeDomainError(f"empty challenge range [0, {bound})")
        cutoff = _TWO_256 - (_TWO_256 % bound)
        while True:
            x = int.from_bytes(self._draw(label), "big")
            if x < cutoff:
                return x % bound

    def clone(self) -> "Transcript":
        t = Transcript.__new__(Transcript)
        t.state = self.state
        t.counter = self.counter
        return t


class KeccakRng:
    """Counter-mode keccak DRBG; all prover-side sampling routes through
    this so proofs are byte-reproducible from (inputs, seed) alone."""

    def __init__(self, seed: bytes, label: bytes = b"rng"):
        self.key = keccak256(frame(label, seed))
        self.counter = 0
        self.buf = b""

    def take(self, n: int) -> bytes:
        while len(self.buf) < n:
            self.buf += keccak256(self.key + le8(self.counter))
            self.counter += 1
        out, self.buf = self.buf[:n], self.buf[n:]
        return out

    def field(self, field: Field) -> int:
        # 8-byte draws, rejected above the largest multiple of the
        # modulus: exactly uniform, four elements per keccak block
        return self.int_below(field.modulus)

    def field_nonzero(self, field: Field) -> int:
        x = self.field(field)
        while x == 0:
            x = self.field(field)
        return x

    def int_below(self, bound: int) -> int:
        if bound < 1:
            raise ChallengeDomainError(f"empty sample range [0, {bound})")
        width, space = (8, 1 << 64) if bound <= 1 << 64 else (32, _TWO_256)
        cutoff = space - (space % bound)
        while True:
            x = int.from_bytes(self.take(width), "big")
            if x < cutoff:
                return x % bound

    def coeffs(self, field: Field, count: int) -> list[int]:
        return [self.field(field) for _ in range(count)]
