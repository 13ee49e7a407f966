"""Commit to a polynomial, prove its shape, answer an evaluation claim.

Walks the commitment layer end to end on the fast known-order backend:
setup, commit, opening check, shape trace, evaluation proof, and a
tamper that the verifier must refuse.
"""

import random

from lumen import GOLDILOCKS, Poly, Transcript, keccak256
from lumen.groups import test_known_order_spec
from lumen.pcs import (
    absorb_commitment,
    build_verify_poly_trace,
    commit,
    eval_prove,
    eval_verify,
    open_commitment,
    setup,
    verify_poly,
)

F = GOLDILOCKS


def transcript_for(pp):
    t = Transcript(b"demo/commitment")
    t.absorb(b"pp", pp.digest())
    return t


def main():
    pp = setup(128, 64, 4, b"demo-01", group=test_known_order_spec())
    print(f"parameters: degree bound {pp.d}, {pp.alpha} generators, "
          f"backend {pp.group.name}")

    rng = random.Random(1)
    f = Poly(F, [rng.randrange(F.modulus) for _ in range(pp.d)])
    com, hint = commit(pp, f, b"demo-01/commit")
    print(f"commitment digests: c={com.digest_pair()[0].hex()[:16]}.. "
          f"q={com.digest_pair()[1].hex()[:16]}..")

    print("opening check:", "accepted" if open_commitment(pp, com, hint) else "REJECTED")

    # the shape trace convinces a verifier the committed value has the
    # declared degree without revealing the coefficients
    t = transcript_for(pp)
    absorb_commitment(t, com)
    trace = build_verify_poly_trace(pp, com, hint, t)

    tv = transcript_for(pp)
    absorb_commitment(tv, com)
    print("shape trace:  ", "accepted" if verify_poly(pp, trace, tv) else "REJECTED")

    t2 = transcript_for(pp)
    absorb_commitment(t2, com)
    claims, eproof = eval_prove(pp, com, hint, t2, b"demo-01/eval")
    print(f"evaluation claims: y_u={claims.y_u} y_v={claims.y_v}")

    tv2 = transcript_for(pp)
    absorb_commitment(tv2, com)
    q_at_xv = com.q.eval(pp.x_v)
    ok = eval_verify(pp, q_at_xv, claims, eproof, tv2)
    print("evaluation proof:", "accepted" if ok else "REJECTED")

    # a shifted claim must die: same proof, wrong asserted value
    from lumen.pcs import EvalClaims
    bad = EvalClaims(y_u=F.add(claims.y_u, 1), y_v=claims.y_v)
    tv3 = transcript_for(pp)
    absorb_commitment(tv3, com)
    bad_ok = eval_verify(pp, q_at_xv, bad, eproof, tv3)
    print("tampered claim:  ", "accepted (BUG)" if bad_ok else "rejected, as it must be")


if __name__ == "__main__":
    main()
