"""Aggregation of commitment checks across a proof chain.

Instead of fully re-verifying every step, the aggregator maintains two
running accumulators over the sequence of committed steps:

  * a digest chain G, folded through hash-to-field so each step costs a
    constant number of keccak permutations plus a handful of point
    evaluations of the step's ring polynomials at a rolling point;
  * a claim accumulator C, a running sum of each step commitment
    evaluated at the field coercion of the previous chain digest.

Each step also carries per-entry scalar polynomials (r_i, s_i, t_i)
whose weighted sum is pinned to a group-derived constant; finalize
re-derives a joint challenge and spot-checks that constraint for every
step, recomputes both accumulators from scratch, and accepts only on
exact agreement.  The per-step aggregation cost stays well below one
full commitment verification, which is the point of the layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .encoding import le8
from .errors import MalformedStep
from .field import Field
from .keccak import keccak256
from .pcs import Commitment, PublicParams, commit as pcs_commit
from .poly import Poly
from .transcript import KeccakRng, Transcript, hash_to_field


@dataclass(frozen=True)
class StepWitness:
    """One aggregable step: a commitment plus its structure vectors."""

    com: Commitment
    p1: Poly
    p2: Poly
    u_idx: tuple[int, ...]
    v: tuple[int, ...]
    w: tuple[int, ...]
    r: tuple[Poly, ...]
    s: tuple[Poly, ...]
    t: tuple[Poly, ...]

    def sigma_poly(self, fld: Field) -> Poly:
        """Sum_i u_i*r_i + v_i*s_i + w_i*t_i as a polynomial."""
        acc = Poly.zero(fld)
        for ui, ri in zip(self.u_idx, self.r):
            acc = acc + ri.scale(fld.reduce(ui))
        for vi, si in zip(self.v, self.s):
            acc = acc + si.scale(fld.reduce(vi))
        for wi, ti in zip(self.w, self.t):
            acc = acc + ti.scale(fld.reduce(wi))
        return acc


@dataclass(frozen=True)
class AggregateState:
    digest_chain: int          # running hash-to-field fold
    claim_acc: Poly            # running sum of bound step claims
    k_exp: int                 # group exponent pinning the step sums
    step_count: int
    prev_digest: bytes         # chains the commitment encodings


def _target_constant(pp: PublicParams, k_exp: int) -> int:
    from .groups import gpow, encode_element

    elt = gpow(pp.group, pp.g, k_exp)
    return hash_to_field(pp.field, b"recursion/target" + encode_element(pp.group, elt))


def make_step(pp: PublicParams, f: Poly, seed: bytes, k_exp: int) -> StepWitness:
    """Build an honest step for f: commit, then scalar polynomials whose
    weighted sum lands exactly on the group-derived target constant."""
    fld = pp.field
    p = fld.modulus
    com, hint = pcs_commit(pp, f, seed)
    u_idx = tuple(range(1, pp.alpha + 1))
    v = pp.v
    w = tuple(i * vi for i, vi in zip(u_idx, v))
    r = tuple(
        Poly.monomial(fld, fld.pow(hint.f.eval(uh), pp.d), i + 1)
        for i, uh in enumerate(pp.u_hats)
    )
    s = tuple(
        Poly.monomial(fld, fld.pow(hint.p1.eval(vi % p), pp.d), i + 1)
        for i, vi in enumerate(v)
    )
    # all but the last t follow the same shape; the last one absorbs the
    # difference so the step sum equals the target at every point
    t_list = [
        Poly.monomial(fld, fld.pow(pp.p2.eval(v[i] % p), pp.d), i + 1)
        for i in range(pp.alpha - 1)
    ]
    partial = Poly.zero(fld)
    for ui, ri in zip(u_idx, r):
        partial = partial + ri.scale(fld.reduce(ui))
    for vi, si in zip(v, s):
        partial = partial + si.scale(fld.reduce(vi))
    for wi, ti in zip(w, t_list):
        partial = partial + ti.scale(fld.reduce(wi))
    target = Poly.constant(fld, _target_constant(pp, k_exp))
    w_last = fld.reduce(w[-1])
    if w_last == 0:
        raise MalformedStep("final weight is divisible by the field modulus")
    t_last = (target - partial).scale(fld.inv(w_last))
    return StepWitness(
        com=com, p1=hint.p1, p2=pp.p2, u_idx=u_idx, v=v, w=w,
        r=r, s=s, t=tuple(t_list) + (t_last,),
    )


def agg_init(pp: PublicParams) -> AggregateState:
    enc = pp.encode()
    g0 = hash_to_field(pp.field, b"recursion/g0" + enc)
    k_exp = 1 + (int.from_bytes(keccak256(enc + b"recursion/k"), "big") % pp.alpha)
    return AggregateState(
        digest_chain=g0,
        claim_acc=Poly.zero(pp.field),
        k_exp=k_exp,
        step_count=0,
        prev_digest=keccak256(enc),
    )


def _step_fold_digest(
    pp: PublicParams, state: AggregateState, step: StepWitness, c_digest: bytes
) -> bytes:
    """Constant-size evaluation summary of the step at a rolling point.

    Binding the fold to point evaluations (rather than full encodings)
    is what keeps per-step cost sub-linear in the commitment size; the
    c polynomial stays bound through its digest, shared with the chain.
    """
    fld = pp.field
    point = hash_to_field(fld, b"recursion/point" + state.prev_digest + le8(state.step_count))
    parts = [c_digest]
    evals = [step.com.q.eval(point), step.p1.eval(point)]
    for poly_vec in (step.r, step.s, step.t):
        acc = 0
        for q in poly_vec:
            acc = fld.add(acc, q.eval(point))
        evals.append(acc)
    parts.extend(le8(e) for e in evals)
    return keccak256(b"".join(parts))


def agg_step(pp: PublicParams, state: AggregateState, step: StepWitness) -> AggregateState:
    """Fold one step into the aggregate; structural defects raise."""
    fld = pp.field
    if len(step.u_idx) != pp.alpha or len(step.v) != pp.alpha or len(step.w) != pp.alpha:
        raise MalformedStep("step vectors disagree with the setup width")
    if not (len(step.r) == len(step.s) == len(step.t) == pp.alpha):
        raise MalformedStep("scalar polynomial vectors disagree with the setup width")
    for i, vi, wi in zip(step.u_idx, step.v, step.w):
        if wi != i * vi:
            raise MalformedStep("weight vector is not the index-by-v product")
    bind_point = hash_to_field(fld, b"recursion/bind" + state.prev_digest)
    claim = fld.reduce(step.com.c.eval(bind_point))
    c_digest = keccak256(step.com.c.to_bytes())  # the single full-size hash
    fold = _step_fold_digest(pp, state, step, c_digest)
    new_g = fld.add(
        state.digest_chain,
        hash_to_field(fld, b"recursion/fold" + le8(state.digest_chain) + fold),
    )
    return AggregateState(
        digest_chain=new_g,
        claim_acc=state.claim_acc + Poly.constant(fld, claim),
        k_exp=state.k_exp,
        step_count=state.step_count + 1,
        prev_digest=c_digest,
    )


def finalize_verify(pp: PublicParams, state: AggregateState, steps: list[StepWitness]) -> int:
    """Recompute both accumulators from scratch and spot-check every
    step's pinned sum at a joint challenge; 1 iff everything agrees."""
    fld = pp.field
    if state.step_count != len(steps):
        return 0
    replay = agg_init(pp)
    if state.k_exp != replay.k_exp:
        return 0
    try:
        for step in steps:
            replay = agg_step(pp, replay, step)
    except MalformedStep:
        return 0
    if replay.digest_chain != state.digest_chain:
        return 0
    if replay.claim_acc != state.claim_acc:
        return 0
    if replay.prev_digest != state.prev_digest:
        return 0
    t = Transcript(b"lumen/recursion/v1")
    t.absorb(b"pp", pp.digest())
    for step in steps:
        t.absorb(b"step", keccak256(step.com.c.to_bytes()))
    z = t.challenge_nonzero_field(fld, b"joint")
    target = _target_constant(pp, state.k_exp)
    for step in steps:
        if step.sigma_poly(fld).eval(z) != target:
            return 0
    return 1
