"""The library's documented challenge and sampling streams, replayed.

Two normative conventions from the proof wire format are mirrored
here so artifacts can be rebuilt byte for byte: the absorption frame
(label, 0x00, 8-byte little-endian length, payload) hashed into a
chained digest state, and the counter-mode DRBG whose 8-byte draws are
rejected above the largest multiple of the bound.

Only the conventions are shared; the hash underneath is this package's
own sponge and every loop is written fresh.
"""

from .modmath import P
from .sponge import digest


def le(value, width):
    return int(value).to_bytes(width, "little")


def frame(label, payload):
    return label + b"\x00" + le(len(payload), 8) + payload


class ChallengeChain:
    """Chained-digest transcript: absorb frames, read challenges."""

    def __init__(self, domain):
        self.state = digest(frame(b"init", domain))
        self.counter = 0

    def absorb(self, label, payload):
        self.state = digest(self.state + frame(label, payload))

    def _draw(self, label):
        self.absorb(b"challenge/" + label, le(self.counter, 8))
        self.counter += 1
        return self.state

    def field_challenge(self, label):
        return int.from_bytes(self._draw(label), "big") % P

    def nonzero_field_challenge(self, label):
        x = self.field_challenge(label)
        while x == 0:
            x = self.field_challenge(label + b"/retry")
        return x

    def bounded_challenge(self, bound, label):
        space = 1 << 256
        cutoff = space - (space % bound)
        while True:
            x = int.from_bytes(self._draw(label), "big")
            if x < cutoff:
                return x % bound


class DrawStream:
    """Counter-mode DRBG: key = digest(frame(label, seed)), blocks by counter."""

    def __init__(self, seed, label=b"rng"):
        self.key = digest(frame(label, seed))
        self.counter = 0
        self.buf = b""

    def take(self, n):
        while len(self.buf) < n:
            self.buf += digest(self.key + le(self.counter, 8))
            self.counter += 1
        out, self.buf = self.buf[:n], self.buf[n:]
        return out

    def below(self, bound):
        width, space = (8, 1 << 64) if bound <= 1 << 64 else (32, 1 << 256)
        cutoff = space - (space % bound)
        while True:
            x = int.from_bytes(self.take(width), "big")
            if x < cutoff:
                return x % bound

    def field(self):
        return self.below(P)

    def field_nonzero(self):
        x = self.field()
        while x == 0:
            x = self.field()
        return x

    def coeffs(self, count):
        return [self.field() for _ in range(count)]
