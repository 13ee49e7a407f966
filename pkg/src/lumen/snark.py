"""Non-interactive compiler: transcript-driven proofs on a fixed wire.

prove() runs the five-phase argument against a deterministic keccak
transcript and serializes only digests, disclosed scalars, and the
per-commitment check material — never a full ring polynomial — so the
wire stays constant-size in both the relation size and the committed
ring dimension.  verify() re-parses, replays the transcript bit for
bit, and runs the decision phase.  A final transcript tag (a challenge
drawn after the last absorption) travels on the wire so every absorbed
byte is binding even where no later equation consumes it.

simulate() emits proofs with no witness at all: sampled stand-ins are
pushed through the same formulas, and values that verifier equations
pin down are solved for rather than sampled, so simulated proofs
verify and their byte distribution matches honest ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .calibration import calibration_id
from .encoding import ByteReader, le8
from .errors import MalformedProof
from .keccak import keccak256
from .pcs import (
    EvalClaims,
    EvalProof,
    PublicParams,
    VerifyPolyTrace,
    simulate_eval,
    simulate_trace,
)
from .piop import (
    CommitmentChecks,
    DecisionDisclosures,
    DecisionReport,
    EncodedIndex,
    ProofView,
    _absorb_disclosures,
    _truncations,
    d1_value,
    d2_value,
    decide,
    prove_session,
    t_value,
)
from .poly import Poly
from .transcript import KeccakRng, Transcript

PROOF_MAGIC = b"LUMN"
PROOF_VERSION = 1
TRANSCRIPT_DOMAIN = b"lumen/snark/v1"


@dataclass(frozen=True)
class Proof:
    calibration: bytes
    relation_digest: bytes
    pp_digest: bytes
    view: ProofView
    final_tag: int

    def encode(self, pp: PublicParams) -> bytes:
        out = bytearray(PROOF_MAGIC)
        out.append(PROOF_VERSION)
        out += self.calibration
        out += self.relation_digest
        out += self.pp_digest
        v = self.view
        for cc in v.commitments:
            out += cc.digest_c + cc.digest_q + le8(cc.q_at_xv)
        for ai in v.a:
            out += le8(ai)
        for dg in v.round2_digests:
            out += dg
        out += le8(v.sigma) + le8(v.v_sum) + le8(v.r3_at) + le8(v.r2_at) + le8(v.r1_at)
        for cc in v.commitments:
            tr = cc.trace
            for coeffs in (tr.r_coeffs, tr.s_coeffs, tr.t_coeffs):
                for c in coeffs:
                    out += le8(c)
            out += le8(tr.m) + le8(tr.n) + le8(tr.r_scalar) + le8(tr.sigma_claim)
        for cc in v.commitments:
            ep = cc.eval_proof
            out += le8(cc.claims.y_u) + le8(cc.claims.y_v)
            out += le8(ep.b_hat) + le8(ep.v_prime) + le8(ep.u_prime) + le8(ep.c_eval)
            out += le8(ep.h1_at_u) + le8(ep.h1_at_v) + le8(ep.h2_at_u) + le8(ep.h2_at_v)
            out += ep.c_digest
        d = v.disclosures
        out += le8(d.f_at) + le8(d.g_at) + le8(d.h_at)
        out += le8(d.b1p_at) + le8(d.b2p_at) + le8(d.b2p_at_one)
        out += le8(d.b2p_sum) + le8(d.d1_claim) + le8(d.d2_claim)
        out += le8(v.seal)
        out += le8(self.final_tag)
        return bytes(out)

    @classmethod
    def decode(cls, pp: PublicParams, data: bytes) -> "Proof":
        r = ByteReader(data)
        r.expect(PROOF_MAGIC, "proof magic")
        if r.u8() != PROOF_VERSION:
            raise MalformedProof("unsupported proof version")
        calib = r.take(2)
        rel_digest = r.take(32)
        pp_digest = r.take(32)
        commits = []
        heads = [(r.take(32), r.take(32), r.u64()) for _ in range(3)]
        a = tuple(r.field(pp.field) for _ in range(6))
        round2 = tuple(r.take(32) for _ in range(5))
        sigma, v_sum, r3_at, r2_at, r1_at = (r.u64() for _ in range(5))
        if not (0 <= sigma < pp.d):
            raise MalformedProof("exponent disclosure outside its range")
        u_idx = tuple(range(1, pp.alpha + 1))
        w = tuple(i * vi for i, vi in zip(u_idx, pp.v))
        traces = []
        for _ in range(3):
            rc = tuple(r.field(pp.field) for _ in range(pp.alpha))
            sc = tuple(r.field(pp.field) for _ in range(pp.alpha))
            tc = tuple(r.field(pp.field) for _ in range(pp.alpha))
            m, n, r_scalar, sigma_claim = (r.field(pp.field) for _ in range(4))
            traces.append(
                VerifyPolyTrace(
                    u_idx=u_idx, v=pp.v, w=w,
                    r_coeffs=rc, s_coeffs=sc, t_coeffs=tc,
                    m=m, n=n, r_scalar=r_scalar, sigma_claim=sigma_claim,
                    x_ch=0, p_ch=0, q_ch=0,  # wire carries no challenges
                )
            )
        for i in range(3):
            y_u, y_v = r.field(pp.field), r.field(pp.field)
            b_hat = r.u64()
            v_prime, u_prime, c_eval = (r.field(pp.field) for _ in range(3))
            h1u, h1v, h2u, h2v = (r.field(pp.field) for _ in range(4))
            c_digest = r.take(32)
            commits.append(
                CommitmentChecks(
                    digest_c=heads[i][0], digest_q=heads[i][1], q_at_xv=heads[i][2],
                    trace=traces[i],
                    claims=EvalClaims(y_u=y_u, y_v=y_v),
                    eval_proof=EvalProof(
                        b_hat=b_hat, v_prime=v_prime, u_prime=u_prime,
                        c_eval=c_eval, c_digest=c_digest,
                        h1_at_u=h1u, h1_at_v=h1v, h2_at_u=h2u, h2_at_v=h2v,
                        c_prime=None,
                    ),
                )
            )
        fields = [r.field(pp.field) for _ in range(6)]
        b2p_sum = r.u64()
        d1_claim, d2_claim = r.field(pp.field), r.field(pp.field)
        seal = r.field(pp.field)
        final_tag = r.u64()
        r.done()
        disc = DecisionDisclosures(
            f_at=fields[0], g_at=fields[1], h_at=fields[2],
            b1p_at=fields[3], b2p_at=fields[4], b2p_at_one=fields[5],
            b2p_sum=b2p_sum, d1_claim=d1_claim, d2_claim=d2_claim,
        )
        view = ProofView(
            a=a, round2_digests=round2, sigma=sigma, v_sum=v_sum,
            r3_at=r3_at, r2_at=r2_at, r1_at=r1_at,
            commitments=tuple(commits), disclosures=disc, seal=seal,
        )
        return cls(calibration=calib, relation_digest=rel_digest,
                   pp_digest=pp_digest, view=view, final_tag=final_tag)


def _open_transcript(pp: PublicParams, enc: EncodedIndex) -> Transcript:
    t = Transcript(TRANSCRIPT_DOMAIN)
    t.absorb(b"calibration", calibration_id())
    rel = enc.relation
    t.absorb(b"public-inputs", le8(rel.n) + le8(rel.m) + le8(rel.k))
    t.absorb(b"index", enc.digest())
    t.absorb(b"pp", pp.digest())
    return t


def prove(
    pp: PublicParams, enc: EncodedIndex, f: Poly, seed: bytes, zk_mask: bool = True
) -> Proof:
    t = _open_transcript(pp, enc)
    _, _, _, view = prove_session(pp, enc, f, t, seed, zk_mask=zk_mask)
    final_tag = t.challenge_field(pp.field, b"snark/final")
    return Proof(
        calibration=calibration_id(),
        relation_digest=enc.digest(),
        pp_digest=pp.digest(),
        view=view,
        final_tag=final_tag,
    )


def verify(pp: PublicParams, enc: EncodedIndex, proof: Proof) -> tuple[int, DecisionReport]:
    """Replay and decide; (accepted, report).  Raises MalformedProof only
    from decode paths, never here — disagreement means rejection."""
    notes = []
    structural = True
    if proof.calibration != calibration_id():
        structural = False
        notes.append("calibration identifier mismatch")
    if proof.relation_digest != enc.digest():
        structural = False
        notes.append("proof targets a different relation")
    if proof.pp_digest != pp.digest():
        structural = False
        notes.append("proof targets different public parameters")
    if not structural:
        report = DecisionReport(
            structural_ok=False, structural_notes=tuple(notes),
            subchecks=(), t_tags=(), accepted=0,
        )
        return 0, report
    t = _open_transcript(pp, enc)
    report = decide(pp, enc, proof.view, t)
    final_tag = t.challenge_field(pp.field, b"snark/final")
    if final_tag != proof.final_tag:
        report = DecisionReport(
            structural_ok=False,
            structural_notes=report.structural_notes + ("final transcript tag mismatch",),
            subchecks=report.subchecks,
            t_tags=report.t_tags,
            accepted=0,
        )
    return report.accepted, report


def verify_bytes(pp: PublicParams, enc: EncodedIndex, data: bytes) -> tuple[int, DecisionReport]:
    proof = Proof.decode(pp, data)
    return verify(pp, enc, proof)


def simulate(pp: PublicParams, enc: EncodedIndex, seed: bytes) -> Proof:
    """Witness-free proof generation; the output verifies."""
    fld = pp.field
    rng = KeccakRng(seed, b"snark/simulate")
    t = _open_transcript(pp, enc)

    heads = []
    for _ in range(3):
        dc = keccak256(rng.take(32))
        dq = keccak256(rng.take(32))
        qv = rng.field_nonzero(fld)
        t.absorb(b"pcs/commit/c", dc)
        t.absorb(b"pcs/commit/q", dq)
        t.absorb(b"piop/qxv", le8(qv))
        heads.append((dc, dq, qv))
    a = tuple(rng.field(fld) for _ in range(6))
    t.absorb_fields(b"piop/a", a)
    tau = t.challenge_nonzero_field(fld, b"piop/tau")
    eps = t.challenge_nonzero_field(fld, b"piop/eps")
    phi = t.challenge_nonzero_field(fld, b"piop/phi")
    # the reduced-coefficient polynomial has a small support, so its
    # digest and disclosed values must come from the honest construction
    # (random blind times public polynomial, coefficients reduced), or
    # their marginals give the simulation away
    trunc = _truncations(a, pp.alpha)
    deg_b2 = max(0, pp.alpha - trunc[1] - trunc[3] - 1)
    n_mod = max(1, enc.relation.n)
    b2_blind = Poly(fld, [rng.field(fld) for _ in range(deg_b2 + 1)])
    raw = b2_blind * (enc.b_poly - enc.q_poly.shift_arg(fld.neg(phi)))
    b2p_sim = Poly(fld, [c % n_mod for c in raw.coeffs])
    round2 = tuple(keccak256(rng.take(32)) for _ in range(4)) + (
        keccak256(b2p_sim.to_bytes()),
    )
    for tag, dg in zip((b"g", b"h", b"f", b"b1p", b"b2p"), round2):
        t.absorb(b"piop/round2/" + tag, dg)
    x_ch = t.challenge_nonzero_field(fld, b"piop/x")
    y_ch = t.challenge_nonzero_field(fld, b"piop/y")
    sigma = t.challenge_exponent(pp.d, b"piop/sigma")

    x_dec = pp.x_v
    v_sum = rng.field(fld)
    r3_at = rng.field(fld)
    # solved so the quotient/vanishing gate holds at the decision point
    r2_at = fld.mul(
        t_value(enc, x_ch, y_ch, r3_at, x_dec), fld.inv(enc.z_m_at(x_dec))
    )
    m_bar = fld.reduce(enc.relation.m)
    r1_at = fld.mul(
        fld.mul(tau, m_bar), fld.mul(r3_at, fld.pow(x_dec, (pp.d - sigma) % pp.d))
    )
    t.absorb_fields(b"piop/round3", (v_sum, r3_at, r2_at, r1_at))

    commits = []
    for i in range(3):
        trace = simulate_trace(pp, t, rng)
        claims, eproof = simulate_eval(pp, heads[i][2], t, rng)
        commits.append(
            CommitmentChecks(
                digest_c=heads[i][0], digest_q=heads[i][1], q_at_xv=heads[i][2],
                trace=trace, claims=claims, eval_proof=eproof,
            )
        )

    g_at = rng.field(fld)
    h_at = rng.field(fld)
    f_at = fld.add(g_at, fld.mul(enc.alpha_bar, h_at))
    b1p_at = rng.field(fld)
    b2p_sum = sum(b2p_sim.coeffs)
    p_hat = enc.p_hat_at(x_dec)
    d1 = d1_value(
        pp, enc, a, tau, eps, sigma,
        commits[0].claims.y_v, commits[1].claims.y_v, commits[2].claims.y_v, p_hat,
    )
    d2 = d2_value(pp, enc, tau, eps, sigma, x_ch, y_ch, r3_at, r2_at)
    disc = DecisionDisclosures(
        f_at=f_at, g_at=g_at, h_at=h_at,
        b1p_at=b1p_at, b2p_at=b2p_sim.eval(x_dec), b2p_at_one=b2p_sim.eval(1),
        b2p_sum=b2p_sum, d1_claim=d1, d2_claim=d2,
    )
    _absorb_disclosures(t, fld, disc)
    seal = t.challenge_field(fld, b"piop/seal")
    final_tag = t.challenge_field(fld, b"snark/final")
    view = ProofView(
        a=a, round2_digests=round2, sigma=sigma, v_sum=v_sum,
        r3_at=r3_at, r2_at=r2_at, r1_at=r1_at,
        commitments=tuple(commits), disclosures=disc, seal=seal,
    )
    return Proof(
        calibration=calibration_id(),
        relation_digest=enc.digest(),
        pp_digest=pp.digest(),
        view=view,
        final_tag=final_tag,
    )
