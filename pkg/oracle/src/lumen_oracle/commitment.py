"""Commitment values recomputed without the library's ring fast paths.

A commitment is two ring polynomials: a masking denominator q built
from a seed-derived blind, and the quotient c that carries the message.
Both are deterministic in (parameters, message, seed), so the oracle
can rebuild them with schoolbook ring arithmetic and pointwise
inversion on the subgroup.
"""

from .artifacts import SetupData
from .modmath import P
from .polyops import add, norm, ring_inverse, ring_mul, scale
from .randstream import DrawStream

MASKING_RETRIES = 64


def commit_values(lam, d, alpha, seed, poly, commit_seed):
    """The (c, q) coefficient lists plus the derived public scalars."""
    sd = SetupData(lam, d, alpha, seed)
    sum_v = 0
    for vi in sd.v:
        sum_v = (sum_v + vi % P) % P
    rng = DrawStream(commit_seed, b"pcs/commit/p1")
    for _ in range(MASKING_RETRIES):
        p1 = rng.coeffs(d - 1) + [1] if d > 1 else [1]
        q = add(scale(p1, sum_v), sd.p2)
        inv_q = ring_inverse(scale(q, sd.alpha_scalar), d)
        if inv_q is None:
            continue
        c = ring_mul(add(scale(norm(poly), sd.s_u), p1), inv_q, d)
        return {
            "c": c,
            "q": q,
            "s_u": sd.s_u,
            "x_u": sd.x_u,
            "x_v": sd.x_v,
            "alpha_scalar": sd.alpha_scalar,
        }
    raise ValueError(f"no invertible masking after {MASKING_RETRIES} attempts")
