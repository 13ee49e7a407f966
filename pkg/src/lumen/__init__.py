"""Transparent polynomial commitments over hidden-order groups.

The package is organised as a stack: finite-field and polynomial
arithmetic at the bottom, a Keccak-based transcript for Fiat-Shamir,
hidden-order group backends, the commitment scheme itself, then
aggregation, the interactive oracle protocol, and finally the
non-interactive compiler plus its command line.
"""

from .calibration import audit, calibration_id
from .errors import (
    IndexInconsistency,
    InvalidParams,
    LumenError,
    MalformedProof,
    MalformedStep,
    MaskingExhausted,
    WitnessMismatch,
)
from .field import GOLDILOCKS, EvaluationDomain, Field
from .groups import rsa_challenge_spec, test_known_order_spec
from .keccak import keccak256
from .pcs import (
    Commitment,
    EvalProof,
    PublicParams,
    commit,
    decode_pp,
    eval_prove,
    eval_verify,
    open_commitment,
    setup,
    verify_poly,
)
from .piop import RelationIndex, decide, generate_relation, index, prove_session, witness_poly
from .poly import Poly
from .recursion import agg_init, agg_step, finalize_verify, make_step
from .snark import Proof, prove, simulate, verify, verify_bytes
from .transcript import KeccakRng, Transcript, hash_to_field

__version__ = "0.1.0"

__all__ = [
    "GOLDILOCKS",
    "Commitment",
    "EvalProof",
    "EvaluationDomain",
    "Field",
    "IndexInconsistency",
    "InvalidParams",
    "KeccakRng",
    "LumenError",
    "MalformedProof",
    "MalformedStep",
    "MaskingExhausted",
    "Poly",
    "Proof",
    "PublicParams",
    "RelationIndex",
    "Transcript",
    "WitnessMismatch",
    "agg_init",
    "agg_step",
    "audit",
    "calibration_id",
    "commit",
    "decide",
    "decode_pp",
    "eval_prove",
    "eval_verify",
    "finalize_verify",
    "generate_relation",
    "hash_to_field",
    "index",
    "keccak256",
    "make_step",
    "open_commitment",
    "prove",
    "prove_session",
    "rsa_challenge_spec",
    "setup",
    "simulate",
    "test_known_order_spec",
    "verify",
    "verify_bytes",
    "verify_poly",
    "witness_poly",
]
