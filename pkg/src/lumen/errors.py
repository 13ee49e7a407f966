"""Error types raised across the library.

Contract violations raise; ordinary verification failure returns 0/False
instead, so callers can always tell "bad input" apart from "valid input,
invalid proof".
"""


class LumenError(Exception):
    """Base class for every library-specific error."""


class DomainMismatch(LumenError):
    """A field element was used with a domain it does not belong to."""


class DivisionByZeroPolynomial(LumenError):
    """Polynomial division by the zero polynomial."""


class InvalidParams(LumenError):
    """Structurally invalid public parameters or sizes."""


class InvalidSeed(LumenError):
    """Seed expansion failed to produce a usable group element."""


class MaskingExhausted(LumenError):
    """Masking resampling hit its retry budget without an invertible blind."""


class ChallengeDomainError(LumenError):
    """A challenge was requested from an empty or invalid range."""


class MalformedStep(LumenError):
    """An aggregation step violates its structural invariants."""


class IndexInconsistency(LumenError):
    """The offline relation check failed; the relation is malformed."""


class WitnessMismatch(LumenError):
    """The supplied witness does not satisfy the relation."""


class NonDivisible(LumenError):
    """An exact polynomial division left a nonzero remainder."""


class MalformedProof(LumenError):
    """Proof bytes cannot be parsed (distinct from verification failure)."""
