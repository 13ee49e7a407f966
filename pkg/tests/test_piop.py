"""Constraint system encoder and multi-round argument unit tests."""

import dataclasses
import random

import pytest

from lumen.errors import MalformedProof, WitnessMismatch
from lumen.field import GOLDILOCKS, EvaluationDomain
from lumen.piop import (
    BiPoly,
    RelationIndex,
    check_witness,
    decide,
    generate_relation,
    index,
    prove_session,
    witness_poly,
)
from lumen.poly import Poly
from lumen.transcript import Transcript

F = GOLDILOCKS


def fresh_transcript(pp, enc):
    t = Transcript(b"test/piop")
    t.absorb(b"pp", pp.digest())
    t.absorb(b"index", enc.digest())
    return t


def run_honest(pp, enc, seed=b"piop-honest"):
    f = witness_poly(pp, enc)
    tp = fresh_transcript(pp, enc)
    r1s, r2s, r3s, view = prove_session(pp, enc, f, tp, seed)
    tv = fresh_transcript(pp, enc)
    report = decide(pp, enc, view, tv)
    return f, view, report, (r1s, r2s, r3s)


def test_generate_relation_deterministic():
    a = generate_relation(8, b"det")
    b = generate_relation(8, b"det")
    c = generate_relation(8, b"other")
    assert a.encode() == b.encode()
    assert a.encode() != c.encode()


def test_relation_codec_round_trip():
    rel = generate_relation(6, b"codec")
    blob = rel.encode()
    back = RelationIndex.decode(blob)
    assert back.encode() == blob
    assert back.digest() == rel.digest()
    with pytest.raises(MalformedProof):
        RelationIndex.decode(blob[:-2])


def test_index_self_consistent_across_sizes():
    for size in (2, 3, 5, 8):
        rel = generate_relation(size, b"idx-%d" % size)
        enc = index(rel)
        assert enc.relation.n == size
        assert enc.domain.size >= max(rel.m, 2)
        assert enc.domain.size & (enc.domain.size - 1) == 0


def test_bipoly_node_eval_consistency():
    rng = random.Random(0xB190)
    dom = EvaluationDomain(F, 8)
    cells = {
        (rng.randrange(8), rng.randrange(8)): rng.randrange(1, F.modulus)
        for _ in range(10)
    }
    bp = BiPoly(dom, dict(cells))
    # eval at grid points reproduces the stored (or zero) cells
    for r in range(8):
        for c in range(8):
            want = bp.node(r, c)
            got = bp.eval(dom.element(r), dom.element(c))
            assert got == want
    # eval_y collapses to a univariate slice on the second variable
    y = rng.randrange(F.modulus)
    sliced = bp.eval_y(y)
    for r in range(8):
        assert sliced.eval(dom.element(r)) == bp.eval(dom.element(r), y)


def test_bipoly_diagonal_shift_matches_pointwise():
    rng = random.Random(0xD1A6)
    dom = EvaluationDomain(F, 8)
    cells = {
        (rng.randrange(8), rng.randrange(8)): rng.randrange(1, F.modulus)
        for _ in range(12)
    }
    bp = BiPoly(dom, dict(cells))
    shifted = bp.diagonal_plus_one_evals()
    for i in range(8):
        z = F.add(dom.element(i), 1)
        assert shifted[i] == bp.eval(z, z)


def test_witness_poly_satisfies_check(pp_small):
    for size in (2, 4, 8):
        enc = index(generate_relation(size, b"wit-%d" % size))
        f = witness_poly(pp_small, enc)
        assert f.degree() < pp_small.d
        check_witness(pp_small, enc, f)  # raises on mismatch


def test_check_witness_rejects_garbage(pp_small, relation_small):
    rng = random.Random(0x6A3B)
    f = witness_poly(pp_small, relation_small)
    bad = f + Poly.constant(F, 1)
    with pytest.raises(WitnessMismatch):
        check_witness(pp_small, relation_small, bad)


def test_honest_sessions_accept(pp_small):
    for size in (2, 4, 8):
        enc = index(generate_relation(size, b"ok-%d" % size))
        _, _, report, _ = run_honest(pp_small, enc)
        assert report.accepted == 1
        assert report.structural_ok
        assert all(v == 1 for _, v in report.subchecks)


def test_decision_fails_on_wrong_transcript(pp_small, relation_small):
    f = witness_poly(pp_small, relation_small)
    tp = fresh_transcript(pp_small, relation_small)
    _, _, _, view = prove_session(pp_small, relation_small, f, tp, b"bind")
    wrong = Transcript(b"test/piop/other")
    wrong.absorb(b"pp", pp_small.digest())
    wrong.absorb(b"index", relation_small.digest())
    report = decide(pp_small, relation_small, view, wrong)
    assert report.accepted == 0


def test_decision_rejects_disclosure_tampering(pp_small, relation_small):
    f, view, report, _ = None, None, None, None
    f = witness_poly(pp_small, relation_small)
    tp = fresh_transcript(pp_small, relation_small)
    _, _, _, view = prove_session(pp_small, relation_small, f, tp, b"mut")
    rng = random.Random(0x7E57)
    disc_fields = [fl.name for fl in dataclasses.fields(view.disclosures)]
    for name in disc_fields:
        old = getattr(view.disclosures, name)
        bad_disc = dataclasses.replace(view.disclosures, **{name: F.add(old, 1)})
        bad_view = dataclasses.replace(view, disclosures=bad_disc)
        tv = fresh_transcript(pp_small, relation_small)
        assert decide(pp_small, relation_small, bad_view, tv).accepted == 0, name


def test_decision_rejects_scalar_tampering(pp_small, relation_small):
    f = witness_poly(pp_small, relation_small)
    tp = fresh_transcript(pp_small, relation_small)
    _, _, _, view = prove_session(pp_small, relation_small, f, tp, b"mut2")
    for name in ("sigma", "v_sum", "r3_at", "r2_at", "r1_at", "seal"):
        old = getattr(view, name)
        bad_view = dataclasses.replace(view, **{name: old + 1})
        tv = fresh_transcript(pp_small, relation_small)
        assert decide(pp_small, relation_small, bad_view, tv).accepted == 0, name


def test_quotient_division_invariant(pp_small, relation_small):
    # T built from the published round-three states must vanish on the
    # constrained rows, leaving an exactly divisible quotient
    from lumen.piop import t_value

    f = witness_poly(pp_small, relation_small)
    tp = fresh_transcript(pp_small, relation_small)
    r1s, r2s, r3s, _ = prove_session(pp_small, relation_small, f, tp, b"div")
    enc = relation_small
    for i in range(enc.relation.m):
        h = enc.domain.element(i)
        assert t_value(enc, r3s.x_ch, r3s.y_ch, r3s.r3.eval(h), h) == 0


def test_zk_mask_changes_proof_but_not_outcome(pp_small, relation_small):
    f = witness_poly(pp_small, relation_small)
    t1 = fresh_transcript(pp_small, relation_small)
    _, _, _, v1 = prove_session(pp_small, relation_small, f, t1, b"mask-on", zk_mask=True)
    t2 = fresh_transcript(pp_small, relation_small)
    _, _, _, v2 = prove_session(pp_small, relation_small, f, t2, b"mask-off", zk_mask=False)
    for view in (v1, v2):
        tv = fresh_transcript(pp_small, relation_small)
        assert decide(pp_small, relation_small, view, tv).accepted == 1
